#include "boltzgap/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "boltzgap/battery.hpp"
#include "boltzgap/bobylev.hpp"
#include "boltzgap/norms.hpp"
#include "boltzgap/spherical.hpp"

namespace boltzgap {

std::vector<double> dyadic_eps(int k_first, int k_last) {
  std::vector<double> out;
  for (int k = k_first; k <= k_last; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

void RatioBand::add(double x) {
  lo = std::min(lo, x);
  hi = std::max(hi, x);
}

namespace {

RadialPtr make_radial(std::vector<double> breakpoints) {
  return std::make_shared<RadialDiscretization>(std::move(breakpoints));
}

KernelConfig kernel_for(double gamma, double s, double eps) {
  KernelConfig k;
  k.gamma = gamma;
  k.s = s;
  k.eps = eps;
  k.validate();
  return k;
}

std::vector<double> log_space(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a * std::pow(b / a, n == 1 ? 0.0 : double(i) / (n - 1));
  return out;
}

void require_eps(const std::vector<double>& eps, std::size_t min_count) {
  if (eps.size() < min_count) throw std::invalid_argument("experiment needs more eps values");
  for (double e : eps)
    if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
}

// Moments of node values (nodes x lm, l <= 1): mass, px, py, pz, energy.
std::array<double, 5> node_moments(const Eigen::MatrixXd& vals, const RadialDiscretization& rad) {
  const double c0 = std::sqrt(4.0 * M_PI), c1 = std::sqrt(4.0 * M_PI / 3.0);
  const auto& r = rad.nodes();
  const auto& w = rad.weights();
  std::array<double, 5> m{};
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Eigen::Index k = static_cast<Eigen::Index>(i);
    const double r2 = w[i] * r[i] * r[i];
    m[0] += c0 * r2 * vals(k, 0);
    m[4] += c0 * r2 * r[i] * r[i] * vals(k, 0);
    if (vals.cols() >= 4) {
      m[1] += c1 * r2 * r[i] * vals(k, lm_index(1, 1));
      m[2] += c1 * r2 * r[i] * vals(k, lm_index(1, -1));
      m[3] += c1 * r2 * r[i] * vals(k, lm_index(1, 0));
    }
  }
  return m;
}

// Upper bounds for int |v|^p |g| (p = 0, 1, 1, 1, 2) from the angular L^2 norm.
std::array<double, 5> node_abs_moments(const Eigen::MatrixXd& vals, const RadialDiscretization& rad) {
  const double c0 = std::sqrt(4.0 * M_PI);
  const auto& r = rad.nodes();
  const auto& w = rad.weights();
  std::array<double, 5> m{};
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double a = c0 * w[i] * r[i] * r[i] * vals.row(static_cast<Eigen::Index>(i)).norm();
    m[0] += a;
    for (int k = 1; k <= 3; ++k) m[k] += a * r[i];
    m[4] += a * r[i] * r[i];
  }
  return m;
}

double node_norm(const Eigen::MatrixXd& vals, const RadialDiscretization& rad) {
  const auto& r = rad.nodes();
  const auto& w = rad.weights();
  double acc = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i)
    acc += w[i] * r[i] * r[i] * vals.row(static_cast<Eigen::Index>(i)).squaredNorm();
  return std::sqrt(acc);
}

}  // namespace

// ---------------------------------------------------------------- ode

OdeBounds ode_bounds(double eps, double s, double t, double t_star) {
  OdeBounds b;
  const double X0 = std::pow(eps, -2.0 * s);
  if (t <= t_star) {
    b.lower_exp = X0 * std::exp(-6.0 * t);
    b.upper_exp = X0 * std::exp(-0.25 * t);
  }
  if (t >= t_star) {
    b.lower_poly = 1.0 / (4.0 + 3.0 * (t - t_star));
    b.upper_poly = 1.0 / (4.0 + (t - t_star));
  }
  return b;
}

OdeExperiment run_ode_experiment(const OdeExperimentOptions& opt) {
  if (!(opt.eps > 0.0 && opt.eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (!(opt.s > 0.0 && opt.s < 1.0)) throw std::invalid_argument("s must lie in (0, 1)");
  if (!(opt.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  OdeExperiment ex;
  ex.options = opt;
  ex.bracket = critical_time_bracket(opt.eps, opt.s);
  ex.bracket_alt = critical_time_bracket_minus(opt.eps, opt.s);
  const double T = opt.T > 0.0 ? opt.T : 1.25 * ex.bracket.hi;
  ex.series = integrate_special(opt.eps, opt.s, T, opt.dt, true);
  ex.t_star = critical_time(ex.series);
  ex.sandwich = check_sandwich(ex.series, ex.t_star);
  ex.in_bracket = ex.bracket.contains(ex.t_star);
  return ex;
}

FgapReport check_fgap_bounds(std::size_t samples, std::uint64_t seed) {
  SplitMix64 rng(seed);
  FgapReport r;
  r.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = (i % 2 == 0) ? std::pow(10.0, rng.uniform(-12.0, 6.0)) : rng.uniform(0.0, 2.0);
    const double f = f_gap(x);
    if (x <= 0.25) {
      ++r.small_checked;
      if (!(x * x <= f && f <= 3.0 * x * x)) ++r.small_violations;
    }
    if (x >= 0.25) {
      ++r.large_checked;
      if (!(0.25 * x <= f && f <= 6.0 * x)) ++r.large_violations;
    }
  }
  return r;
}

// ---------------------------------------------------------------- symbol

SymbolExperiment run_symbol_experiment(const SymbolOptions& opt) {
  require_eps(opt.eps_list, 1);
  if (opt.points_low < 2 || opt.points_high < 2) throw std::invalid_argument("need >= 2 points per band");
  SymbolExperiment ex;
  ex.options = opt;
  for (double eps : opt.eps_list) {
    KernelConfig k = kernel_for(0.0, opt.s, eps);
    k.angular_refine = opt.angular_refine;
    for (double xi : log_space(opt.xi_min, 2.0, opt.points_low)) {
      SymbolRow row{xi, eps, symbol_A(xi, k), xi * xi, 0.0, false};
      row.ratio = row.A / row.reference;
      ex.low.add(row.ratio);
      ex.rows.push_back(row);
    }
    for (double xi : log_space(2.0, 4.0 / eps, opt.points_high)) {
      const double W = weight_Weps(xi, eps, opt.s);
      SymbolRow row{xi, eps, symbol_A(xi, k), W * W, 0.0, true};
      row.ratio = row.A / row.reference;
      ex.high.add(row.ratio);
      ex.rows.push_back(row);
    }
  }
  return ex;
}

// ---------------------------------------------------------------- norm equivalence

EquivalenceExperiment run_equivalence_experiment(const EquivalenceOptions& opt) {
  require_eps(opt.eps_list, 1);
  if (opt.grid_n.empty()) throw std::invalid_argument("need at least one grid size");
  EquivalenceExperiment ex;
  ex.options = opt;
  ex.bands.resize(opt.grid_n.size());
  const auto rad = make_radial(uniform_breakpoints(opt.r_max, opt.dr));
  const auto fns = battery(opt.seed);
  std::vector<GridPtr> grids;
  std::vector<SphericalTransform> transforms;
  for (int n : opt.grid_n) {
    grids.push_back(make_grid(n, opt.half_width));
    transforms.push_back(SphericalTransform::for_grid(*grids.back(), opt.l_max, opt.shells));
  }
  for (double eps : opt.eps_list) {
    const RotationalOperator L(kernel_for(opt.gamma, opt.s, eps), rad, opt.l_max);
    for (std::size_t g = 0; g < grids.size(); ++g) {
      for (const auto& b : fns) {
        const EquivalenceTerms t = equivalence_ratio(sample(b, grids[g]), L, transforms[g]);
        EquivalenceRow row;
        row.function_id = b.id;
        row.n = opt.grid_n[g];
        row.eps = eps;
        row.quadratic_form = t.quadratic_form;
        row.lhs = t.quadratic_form + t.weighted_l2;
        row.rhs = t.triple.total;
        row.ratio = t.ratio;
        row.tail = t.triple.tail;
        ex.bands[g].add(row.ratio);
        ex.rows.push_back(row);
      }
    }
  }
  for (const auto& b : ex.bands) ex.max_span = std::max(ex.max_span, b.span());
  ex.refinement_change = std::abs(ex.bands.back().span() / ex.bands.front().span() - 1.0);
  return ex;
}

// ---------------------------------------------------------------- semigroup

bool RetentionExperiment::pass() const {
  if (reports.size() < 2) return false;
  for (const auto& r : reports)
    if (!r.holds) return false;
  return C_fit_variation < 0.5;
}

RetentionExperiment run_retention_experiment(const RetentionOptions& opt) {
  require_eps(opt.eps_list, 1);
  RetentionExperiment ex;
  ex.options = opt;
  const double ring = std::ldexp(1.0, opt.j);
  double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
  for (double eps : opt.eps_list) {
    // Mesh resolves the ring at the inner spacing and reaches well past N0 2^j.
    const auto rad = make_radial(graded_breakpoints(12.0, 0.25, opt.N0 * ring + 16.0, 1.05, 4.0));
    const RotationalOperator L(kernel_for(opt.gamma, opt.s, eps), rad, 0);
    const SpectralField f0 = make_ring_datum(rad, opt.j, opt.N0);
    const LinearEvolution sys = spectral_evolution(L, 0, eps, {opt.j});
    EvolutionConfig ec;
    ec.T = opt.eta * std::pow(2.0, -opt.j * opt.gamma) * std::pow(eps, 2.0 * opt.s);
    ec.cadence = 1;
    ex.series.push_back(evolve(sys, sys.reproject(f0.coeffs.col(0)), ec));
    ex.reports.push_back(retention_check(ex.series.back(), 0, eps, opt.s, opt.gamma, opt.j, opt.eta));
    cmin = std::min(cmin, ex.reports.back().C_fit);
    cmax = std::max(cmax, ex.reports.back().C_fit);
  }
  ex.C_fit_variation = (cmax - cmin) / cmin;
  return ex;
}

CrossoverExperiment run_crossover_experiment(const CrossoverOptions& opt) {
  require_eps(opt.eps_list, 1);
  CrossoverExperiment ex;
  ex.options = opt;
  const auto rad = make_radial(graded_breakpoints(12.0, 0.25, opt.r_max, 1.05, 8.0));
  SpectralField f = analyze_radial([&](double r) { return std::pow(1.0 + r * r, -0.5 * opt.decay_power); }, rad, 0);
  f = project_out_N(f);
  f *= 1.0 / std::sqrt(spectral_norm2(f));
  std::vector<double> x, y;
  for (double eps : opt.eps_list) {
    const RotationalOperator L(kernel_for(opt.gamma, opt.s, eps), rad, 0);
    const LinearEvolution sys = spectral_evolution(L, 0, eps, {});
    EvolutionConfig ec;
    ec.T = opt.T;
    ec.cadence = opt.cadence;
    ex.series.push_back(evolve(sys, sys.reproject(f.coeffs.col(0)), ec));
    ex.t_star.push_back(detect_crossover(ex.series.back()));
    if (ex.t_star.back()) {
      x.push_back(-std::log(eps));
      y.push_back(*ex.t_star.back());
    }
  }
  ex.detected = static_cast<int>(x.size());
  if (x.size() >= 2) ex.fit = linear_fit(x, y);
  return ex;
}

// ---------------------------------------------------------------- commutator

CommutatorExperiment run_commutator_experiment(const CommutatorOptions& opt) {
  require_eps(opt.eps_list, 2);
  CommutatorExperiment ex;
  ex.options = opt;
  ex.target = 2.0 * opt.s;
  const auto rad = make_radial(graded_breakpoints(12.0, 0.25, opt.r_max, 1.05, 4.0));
  const SpectralField f =
      analyze_radial([&](double r) { return std::pow(1.0 + r * r, -0.5 * opt.decay_power); }, rad, 0);
  std::vector<double> x, y;
  for (double eps : opt.eps_list) {
    const RotationalOperator L(kernel_for(opt.gamma, opt.s, eps), rad, 0);
    CommutatorRow row{eps, 1.0 / eps, 0.0};
    row.pairing = commutator_pairing(f, opt.kind, row.M, L);
    ex.rows.push_back(row);
    x.push_back(eps);
    y.push_back(row.pairing);
  }
  ex.fit = power_law_fit(x, y);
  return ex;
}

// ---------------------------------------------------------------- operator difference

OperatorDiffExperiment run_operator_diff_experiment(const OperatorDiffOptions& opt) {
  require_eps(opt.eps_list, 2);
  OperatorDiffExperiment ex;
  ex.options = opt;
  ex.target = 2.0 - 2.0 * opt.s;
  ex.eps_ref = opt.eps_ref > 0.0 ? opt.eps_ref : *std::min_element(opt.eps_list.begin(), opt.eps_list.end()) / 8.0;
  const auto rad = make_radial(uniform_breakpoints(opt.r_max, opt.dr));
  const SpectralField h = analyze_radial([](double r) { return std::exp(-0.5 * r * r); }, rad, 0);
  const SpectralField f = analyze_radial([](double r) { return (1.0 + r * r) * std::exp(-0.5 * r * r); }, rad, 0);
  auto pairing = [&](double eps) {
    return RotationalOperator(kernel_for(opt.gamma, opt.s, eps), rad, 0).bilinear_raw(h, f);
  };
  ex.reference_pairing = pairing(ex.eps_ref);
  std::vector<double> x, y;
  for (double eps : opt.eps_list) {
    OperatorDiffRow row{eps, pairing(eps), 0.0};
    row.difference = row.pairing - ex.reference_pairing;
    ex.rows.push_back(row);
    x.push_back(eps);
    y.push_back(row.difference);
  }
  ex.fit = power_difference_fit(x, y, ex.eps_ref);
  return ex;
}

// ---------------------------------------------------------------- operator sanity

SanityExperiment run_sanity_experiment(const SanityOptions& opt) {
  SanityExperiment ex;
  ex.options = opt;
  const KernelConfig k = kernel_for(opt.gamma, opt.s, opt.eps);
  const auto rad = make_radial(uniform_breakpoints(opt.r_max, opt.dr));
  const auto grid = make_grid(opt.n, opt.half_width);

  const RotationalOperator Q(k, rad, 1, Integrand::MaxwellCollision);
  const RotationalOperator Qg(k, rad, 1, Integrand::MaxwellCollision, Part::Gain);
  const RotationalOperator Ql(k, rad, 1, Integrand::MaxwellCollision, Part::Loss);

  // Q(mu, f) + Q(f, mu) at f = mu is 2 Q(mu, mu).
  const SpectralField mu = analyze_field(maxwellian(grid).first, rad, 1);
  ex.qmumu_residual = node_norm(Q.apply_nodes(mu), *rad) / node_norm(Ql.apply_nodes(mu), *rad);

  static const char* names[5] = {"mass", "px", "py", "pz", "energy"};
  for (const auto& b : battery(opt.seed)) {
    const SpectralField f = analyze_field(sample(b, grid), rad, 1);
    const auto full = node_moments(Q.apply_nodes(f), *rad);
    // Absolute moments: signed ones vanish by symmetry for many battery members.
    const auto gain = node_abs_moments(Qg.apply_nodes(f), *rad);
    const auto loss = node_abs_moments(Ql.apply_nodes(f), *rad);
    for (int m = 0; m < 5; ++m) {
      MomentRow row{b.id, names[m], full[m], gain[m] + loss[m], 0.0};
      row.relative = std::abs(row.value) / row.scale;
      ex.max_moment = std::max(ex.max_moment, row.relative);
      ex.moments.push_back(row);
    }
  }

  const RotationalOperator L(k, rad, 1, Integrand::Linearized);
  const RotationalOperator Ll(k, rad, 1, Integrand::Linearized, Part::Loss);
  const std::vector<std::pair<std::string, std::function<double(const Vec3&)>>> null_space = {
      {"sqrt_mu", [](const Vec3& v) { return sqrt_maxwellian_value(v); }},
      {"vx_sqrt_mu", [](const Vec3& v) { return v[0] * sqrt_maxwellian_value(v); }},
      {"vy_sqrt_mu", [](const Vec3& v) { return v[1] * sqrt_maxwellian_value(v); }},
      {"vz_sqrt_mu", [](const Vec3& v) { return v[2] * sqrt_maxwellian_value(v); }},
      {"energy_sqrt_mu", [](const Vec3& v) { return dot3(v, v) * sqrt_maxwellian_value(v); }},
  };
  for (const auto& [id, fn] : null_space) {
    const SpectralField e = analyze_field(Field::from_function(grid, fn), rad, 1);
    NullRow row{id, node_norm(L.apply_nodes(e), *rad), node_norm(Ll.apply_nodes(e), *rad), 0.0};
    row.relative = row.residual / row.scale;
    ex.max_null = std::max(ex.max_null, row.relative);
    ex.null_space.push_back(row);
  }
  return ex;
}

// ---------------------------------------------------------------- bobylev

BobylevExperiment run_bobylev_experiment(const BobylevExperimentOptions& opt) {
  BobylevExperiment ex;
  ex.options = opt;
  const KernelConfig k = kernel_for(0.0, opt.s, opt.eps);
  const auto rad = make_radial(uniform_breakpoints(opt.r_max, opt.dr));
  const auto grid = make_grid(opt.n, opt.half_width);
  const auto blocks = seminorm_R_blocks(k, rad, opt.l_max);
  for (const auto& b : battery(opt.seed)) {
    const Field f = sample(b, grid);
    BobylevRow row;
    row.function_id = b.id;
    row.frequency = bobylev_R(f, k);
    row.physical = seminorm_R(blocks, analyze_field(f, rad, opt.l_max));
    row.relative = std::abs(row.frequency - row.physical) / std::abs(row.physical);
    ex.max_relative = std::max(ex.max_relative, row.relative);
    ex.rows.push_back(row);
  }
  return ex;
}

}  // namespace boltzgap
