#include "boltzgap/semigroup.hpp"

#include <algorithm>
#include <cmath>

#include "boltzgap/battery.hpp"
#include "boltzgap/fit.hpp"

namespace boltzgap {

void EvolutionConfig::validate() const {
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  if (dt < 0.0) throw std::invalid_argument("dt must be positive (or 0 for the stability bound)");
  if (!(c_stab > 0.0 && c_stab <= 0.5)) throw std::invalid_argument("c_stab must lie in (0, 0.5]");
  if (cadence < 1) throw std::invalid_argument("cadence must be >= 1");
  if (power_iterations < 1) throw std::invalid_argument("power_iterations must be >= 1");
}

namespace {
double norm_estimate(const Eigen::MatrixXd& K, int iterations) {
  Eigen::VectorXd x(K.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = 1.0 + 0.5 * std::sin(1.7 * static_cast<double>(i));
  double est = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd y = K * x;
    est = y.norm() / x.norm();
    if (est == 0.0) break;
    x = y / y.norm();
  }
  return est;
}
}  // namespace

DecaySeries evolve(const LinearEvolution& sys, const Eigen::VectorXd& c0, const EvolutionConfig& cfg,
                   Eigen::VectorXd* final_state) {
  cfg.validate();
  const Eigen::LLT<Eigen::MatrixXd> llt(sys.M);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("mass matrix is not positive definite");
  const Eigen::MatrixXd K = llt.solve(sys.A);

  double dt = cfg.dt;
  if (dt == 0.0) {
    const double est = norm_estimate(K, cfg.power_iterations);
    dt = est > 0.0 ? cfg.c_stab / est : cfg.T;
  }
  const long steps = std::max(1L, static_cast<long>(std::ceil(cfg.T / dt - 1e-9)));
  dt = cfg.T / static_cast<double>(steps);

  DecaySeries out;
  out.dt = dt;
  out.block_ids = sys.block_ids;
  out.blocks.assign(sys.block_forms.size(), {});
  Eigen::VectorXd c = c0;
  auto energy = [&](const Eigen::VectorXd& x) { return x.dot(sys.M * x); };
  auto record = [&](double t) {
    if (cfg.reproject && sys.reproject) c = sys.reproject(c);
    out.times.push_back(t);
    out.energy.push_back(energy(c));
    out.low.push_back(sys.low_form.size() ? c.dot(sys.low_form * c) : 0.0);
    out.high.push_back(sys.high_form.size() ? c.dot(sys.high_form * c) : 0.0);
    for (std::size_t b = 0; b < sys.block_forms.size(); ++b) out.blocks[b].push_back(c.dot(sys.block_forms[b] * c));
    if (sys.macro) out.macro.push_back(sys.macro(c));
  };

  record(0.0);
  double E = energy(c);
  for (long n = 1; n <= steps; ++n) {
    const Eigen::VectorXd k1 = -(K * c);
    const Eigen::VectorXd k2 = -(K * (c + 0.5 * dt * k1));
    const Eigen::VectorXd k3 = -(K * (c + 0.5 * dt * k2));
    const Eigen::VectorXd k4 = -(K * (c + dt * k3));
    c += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double En = energy(c);
    if (E > 0.0) {
      const double growth = (En - E) / E;
      out.max_step_growth = std::max(out.max_step_growth, growth);
      if (growth > cfg.abort_growth)
        throw StabilityError("energy grew by a relative " + std::to_string(growth) + " in one step (dt = " +
                             std::to_string(dt) + ")");
    }
    E = En;
    if (n % cfg.cadence == 0 || n == steps) {
      record(static_cast<double>(n) * dt);
      E = energy(c);
    }
  }
  if (final_state) *final_state = c;
  return out;
}

LinearEvolution grid_evolution(const Eigen::MatrixXd& L, const GridPtr& grid, double eps,
                               const std::vector<int>& block_ids) {
  const auto N = static_cast<Eigen::Index>(grid->size());
  if (L.rows() != N || L.cols() != N) throw std::invalid_argument("operator size does not match the grid");
  const double h3 = grid->cell_volume();
  LinearEvolution sys;
  sys.M = h3 * Eigen::MatrixXd::Identity(N, N);
  sys.A = h3 * L;
  Eigen::VectorXd lo(N), hi(N);
  for (Eigen::Index q = 0; q < N; ++q) {
    const double p = bump_phi(eps * norm3(grid->node(static_cast<std::size_t>(q))));
    lo(q) = h3 * p * p;
    hi(q) = h3 * (1.0 - p) * (1.0 - p);
  }
  sys.low_form = lo.asDiagonal();
  sys.high_form = hi.asDiagonal();
  sys.block_ids = block_ids;
  for (int j : block_ids) {
    Eigen::VectorXd d(N);
    for (Eigen::Index q = 0; q < N; ++q) {
      const double w = dyadic_weight(norm3(grid->node(static_cast<std::size_t>(q))), j);
      d(q) = h3 * w * w;
    }
    sys.block_forms.push_back(d.asDiagonal());
  }
  auto to_field = [grid](const Eigen::VectorXd& c) { return Field(grid, std::vector<double>(c.data(), c.data() + c.size())); };
  sys.macro = [to_field](const Eigen::VectorXd& c) { return macro_coefficients(to_field(c)); };
  sys.reproject = [to_field](const Eigen::VectorXd& c) {
    const Field f = project_out_N(to_field(c));
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(f.data(), static_cast<Eigen::Index>(f.size())));
  };
  return sys;
}

LinearEvolution spectral_evolution(const RotationalOperator& L, int l, double eps, const std::vector<int>& block_ids,
                                   bool deflate) {
  if (l < 0 || l > L.l_max()) throw std::invalid_argument("degree outside the operator range");
  const RadialPtr rad = L.radial();
  LinearEvolution sys;
  sys.M = rad->mass(l);
  sys.A = L.stiffness(l);
  // Collision invariants of this degree: sqrt(mu), |v|^2 sqrt(mu) (l = 0) and
  // v sqrt(mu) (l = 1). Quadrature leaves them with eigenvalues of order
  // 1e-4 of either sign; deflating them makes the discrete null space exact
  // without touching the form on its M-orthogonal complement.
  std::vector<std::function<double(double)>> invariants;
  if (l == 0) {
    invariants.push_back([](double r) { return sqrt_maxwellian_radial(r); });
    invariants.push_back([](double r) { return r * r * sqrt_maxwellian_radial(r); });
  } else if (l == 1) {
    invariants.push_back([](double r) { return r * sqrt_maxwellian_radial(r); });
  }
  if (deflate && !invariants.empty()) {
    Eigen::MatrixXd Nv(sys.M.rows(), static_cast<Eigen::Index>(invariants.size()));
    for (std::size_t i = 0; i < invariants.size(); ++i) Nv.col(static_cast<Eigen::Index>(i)) = rad->project(invariants[i], l);
    const Eigen::MatrixXd MN = sys.M * Nv;
    const Eigen::MatrixXd G = Nv.transpose() * MN;
    // Pi = I - N G^{-1} N^T M projects M-orthogonally onto the complement.
    const Eigen::MatrixXd Pi =
        Eigen::MatrixXd::Identity(sys.M.rows(), sys.M.cols()) - Nv * G.ldlt().solve(MN.transpose());
    sys.A = Pi.transpose() * sys.A * Pi;
    sys.A = 0.5 * (sys.A + sys.A.transpose()).eval();
    sys.reproject = [Pi](const Eigen::VectorXd& c) { return Eigen::VectorXd(Pi * c); };
  }
  sys.low_form = rad->weighted_mass(l, [eps](double r) { return bump_phi(eps * r); });
  sys.high_form = rad->weighted_mass(l, [eps](double r) { return 1.0 - bump_phi(eps * r); });
  // weighted_mass puts identity on inactive indices; those stay zero anyway.
  for (int k = 0; k < rad->first_active(l); ++k) {
    sys.low_form(k, k) = 0.0;
    sys.high_form(k, k) = 0.0;
  }
  sys.block_ids = block_ids;
  for (int j : block_ids) {
    Eigen::MatrixXd B = rad->weighted_mass(l, [j](double r) { return dyadic_weight(r, j); });
    for (int k = 0; k < rad->first_active(l); ++k) B(k, k) = 0.0;
    sys.block_forms.push_back(std::move(B));
  }
  if (l == 0) {
    auto to_field = [rad](const Eigen::VectorXd& c) {
      SpectralField f = SpectralField::zero(rad, 0);
      f.coeffs.col(0) = c;
      return f;
    };
    sys.macro = [to_field](const Eigen::VectorXd& c) { return macro_coefficients(to_field(c)); };
    if (!sys.reproject)
      sys.reproject = [to_field](const Eigen::VectorXd& c) {
        return Eigen::VectorXd(project_out_N(to_field(c)).coeffs.col(0));
      };
  }
  return sys;
}

Field make_ring_datum(const GridPtr& grid, int j, double N0) {
  if (N0 < 2.0) throw std::invalid_argument("N0 must be >= 2");
  const double a = std::ldexp(1.0, j);
  if (N0 * a > grid->half_width() - 2.0) throw std::invalid_argument("ring exceeds the velocity domain");
  Field f = Field::from_function(grid, [&](const Vec3& v) { return ring_profile(norm3(v), a, N0 * a); });
  f *= 1.0 / l2_norm(f);
  f = project_out_N(f);
  f *= 1.0 / l2_norm(f);
  return f;
}

SpectralField make_ring_datum(const RadialPtr& radial, int j, double N0) {
  if (N0 < 2.0) throw std::invalid_argument("N0 must be >= 2");
  const double a = std::ldexp(1.0, j);
  if (N0 * a > radial->r_max() - 2.0) throw std::invalid_argument("ring exceeds the radial domain");
  SpectralField f = analyze_radial([&](double r) { return ring_profile(r, a, N0 * a); }, radial, 0);
  f *= 1.0 / std::sqrt(spectral_norm2(f));
  f = project_out_N(f);
  f *= 1.0 / std::sqrt(spectral_norm2(f));
  return f;
}

std::optional<double> detect_crossover(const std::vector<double>& t, const std::vector<double>& energy) {
  std::vector<double> tt, y;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (energy[i] > 0.0) {
      tt.push_back(t[i]);
      y.push_back(std::log(energy[i]));
    }
  if (tt.size() < 8) return std::nullopt;
  const TwoSegmentFit fit = two_segment_fit(tt, y);
  if (!fit.found) return std::nullopt;
  return fit.breakpoint;
}

std::optional<double> detect_crossover(const DecaySeries& s) { return detect_crossover(s.times, s.energy); }

RetentionReport retention_check(const DecaySeries& series, int b, double eps, double s, double gamma, int j,
                                double eta) {
  RetentionReport rep;
  const double e2s = std::pow(eps, 2.0 * s);
  const double rate = std::pow(eps, -2.0 * s) * std::pow(2.0, j * gamma);
  rep.window_end = eta * std::pow(2.0, -j * gamma) * e2s;
  const auto& B = series.blocks.at(static_cast<std::size_t>(b));
  const double E0 = series.energy.front();
  const double B0 = B.front() / E0;
  rep.min_block = B0;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const double t = series.times[i];
    if (t > rep.window_end * (1.0 + 1e-12)) break;
    const double Bt = B[i] / E0;
    rep.min_block = std::min(rep.min_block, Bt);
    rep.C_fit = std::max(rep.C_fit, (B0 - Bt) / (rate * t + e2s));
    ++rep.records;
  }
  rep.bound = 1.0 - 4.0 * eta - rep.C_fit * e2s;
  rep.margin = rep.min_block - rep.bound;
  rep.holds = rep.records > 1 && rep.margin >= 0.0;
  return rep;
}

ExponentialFit exponential_envelope(const DecaySeries& series, double t_end) {
  ExponentialFit fit;
  const double E0 = series.energy.front();
  std::size_t last = 0;
  for (std::size_t i = 0; i < series.times.size() && series.times[i] <= t_end * (1.0 + 1e-12); ++i) last = i;
  if (last == 0 || !(E0 > 0.0) || !(series.energy[last] > 0.0)) return fit;
  fit.c = -std::log(series.energy[last] / E0) / series.times[last];
  for (std::size_t i = 0; i <= last; ++i)
    fit.A = std::max(fit.A, series.energy[i] / E0 * std::exp(fit.c * series.times[i]));
  fit.holds = fit.c > 0.0 && std::isfinite(fit.A);
  return fit;
}

SplitBoundFit split_bound(const DecaySeries& series, double eps, double s) {
  SplitBoundFit fit;
  const double E0 = series.energy.front(), L0 = series.low.front(), H0 = series.high.front();
  if (!(E0 > 0.0)) return fit;
  // Decay rate of the low part: chord of log|f^l|^2 to the point where it has
  // lost most of its mass (or the end of the series).
  std::size_t k = series.times.size() - 1;
  for (std::size_t i = 1; i < series.times.size(); ++i)
    if (series.low[i] < 1e-2 * L0) {
      k = i;
      break;
    }
  if (L0 > 0.0 && series.low[k] > 0.0 && series.times[k] > 0.0) fit.c = -std::log(series.low[k] / L0) / series.times[k];
  const double e2s = std::pow(eps, 2.0 * s);
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const double excess = series.energy[i] - std::exp(-fit.c * series.times[i]) * L0 - H0;
    fit.C = std::max(fit.C, excess / (e2s * E0));
  }
  fit.holds = fit.c > 0.0 && std::isfinite(fit.C);
  return fit;
}

}  // namespace boltzgap
