#include "boltzgap/direct.hpp"

#include <stdexcept>

#include "boltzgap/interpolation.hpp"
#include "parallel.hpp"

namespace boltzgap {

using detail::parallel_for;

namespace {
constexpr double kSqrtMuFloor = 1e-12;

double regularized_delta(const KernelConfig& cfg, const VelocityGrid& g) {
  if (cfg.gamma < 0.0 && cfg.delta == 0.0) return 0.5 * g.spacing();
  return cfg.delta;
}

/// Sigma directions around u_hat = (v - v_*)/|v - v_*| for one pair.
struct PairFrame {
  Vec3 a, e1, e2;
  double u;
};

PairFrame pair_frame(const Vec3& v, const Vec3& vs) {
  PairFrame f;
  const Vec3 d{v[0] - vs[0], v[1] - vs[1], v[2] - vs[2]};
  f.u = norm3(d);
  f.a = {d[0] / f.u, d[1] / f.u, d[2] / f.u};
  complete_frame(f.a, f.e1, f.e2);
  return f;
}

void check_grid(const Field& f, const CollisionWorkspace& ws) {
  if (!(f.grid() == *ws.grid())) throw std::invalid_argument("field grid does not match the workspace grid");
}
}  // namespace

void complete_frame(const Vec3& a, Vec3& e1, Vec3& e2) {
  // Axis least aligned with a.
  int k = 0;
  if (std::abs(a[1]) < std::abs(a[k])) k = 1;
  if (std::abs(a[2]) < std::abs(a[k])) k = 2;
  Vec3 t{0.0, 0.0, 0.0};
  t[k] = 1.0;
  const double p = dot3(t, a);
  e1 = {t[0] - p * a[0], t[1] - p * a[1], t[2] - p * a[2]};
  const double n = norm3(e1);
  for (double& x : e1) x /= n;
  e2 = {a[1] * e1[2] - a[2] * e1[1], a[2] * e1[0] - a[0] * e1[2], a[0] * e1[1] - a[1] * e1[0]};
}

CollisionWorkspace::CollisionWorkspace(GridPtr grid, const KernelConfig& cfg, int interp_order, unsigned threads)
    : grid_(std::move(grid)), cfg_(cfg), order_(interp_order), threads_(threads) {
  if (!grid_) throw std::invalid_argument("null grid");
  if (order_ != 1 && order_ != 3) throw std::invalid_argument("interpolation order must be 1 or 3");
  cfg_.validate();
  cfg_.delta = regularized_delta(cfg_, *grid_);
  rule_ = angular_quadrature(cfg_);
  lambda_ = rule_.total_b();
  for (std::size_t i = 0; i < rule_.theta.size(); ++i) {
    const double w = rule_.w_theta[i] * rule_.b[i] * rule_.w_phi;
    if (w == 0.0) continue;
    const double ct = std::cos(rule_.theta[i]), st = std::sin(rule_.theta[i]);
    for (std::size_t j = 0; j < rule_.cos_phi.size(); ++j)
      sigma_.push_back({{st * rule_.cos_phi[j], st * rule_.sin_phi[j], ct}, w});
  }
}

Field Q_eps(const Field& g, const Field& h, const CollisionWorkspace& ws) {
  check_grid(g, ws);
  check_grid(h, ws);
  const VelocityGrid& G = *ws.grid();
  const GridInterpolator Ig(g, ws.order()), Ih(h, ws.order());
  const double h3 = G.cell_volume();
  const auto& cfg = ws.kernel();
  Field out(ws.grid());
  parallel_for(G.size(), ws.threads(), [&](std::size_t p) {
    const Vec3 v = G.node(p);
    std::vector<double> terms;
    terms.reserve(G.size());
    for (std::size_t q = 0; q < G.size(); ++q) {
      if (q == p) continue;  // |u| = 0: no collision
      const Vec3 vs = G.node(q);
      const PairFrame fr = pair_frame(v, vs);
      const double kin = kinetic_factor(fr.u, cfg.gamma, cfg.delta);
      double gain = 0.0;
      for (const auto& sn : ws.sigma()) {
        Vec3 vp, vps;
        post_collision(v, vs, rotate_to(sn.dir, fr.a, fr.e1, fr.e2), vp, vps);
        gain += sn.w * Ig(vps) * Ih(vp);
      }
      terms.push_back(h3 * kin * (gain - ws.lambda() * g[q] * h[p]));
    }
    out[p] = pairwise_sum(terms);
  });
  return out;
}

Field Gamma_eps(const Field& g, const Field& h, const CollisionWorkspace& ws) {
  const Field sq = maxwellian(ws.grid()).second;
  Field q = Q_eps(multiply(sq, g), multiply(sq, h), ws);
  for (std::size_t p = 0; p < q.size(); ++p) q[p] = sq[p] < kSqrtMuFloor ? 0.0 : q[p] / sq[p];
  return q;
}

Field L_eps(const Field& f, const CollisionWorkspace& ws) {
  const Field sq = maxwellian(ws.grid()).second;
  Field out = Gamma_eps(sq, f, ws);
  out += Gamma_eps(f, sq, ws);
  out *= -1.0;
  return out;
}

double quadratic_form(const Field& f, const CollisionWorkspace& ws) { return inner(L_eps(f, ws), f); }

double commutator_pairing(const Field& f, Localizer kind, double M, const CollisionWorkspace& ws) {
  check_grid(f, ws);
  const Field cf = multiply_radial(f, [&](double r) { return localizer(kind, r, M); });
  const Field c2f = multiply_radial(cf, [&](double r) { return localizer(kind, r, M); });
  return inner(L_eps(cf, ws), cf) - inner(L_eps(f, ws), c2f);
}

Eigen::MatrixXd assemble_L_dense(const CollisionWorkspace& ws) {
  const VelocityGrid& G = *ws.grid();
  const std::size_t N = G.size();
  const Field sq = maxwellian(ws.grid()).second;
  // Gamma_eps multiplies the grid sqrt(mu) samples, so mu enters as sq * sq.
  const Field mu = multiply(sq, sq);
  const GridInterpolator Imu(mu, ws.order());
  const double h3 = G.cell_volume();
  const auto& cfg = ws.kernel();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  parallel_for(N, ws.threads(), [&](std::size_t p) {
    if (sq[p] < kSqrtMuFloor) return;
    std::vector<double> row(N, 0.0);
    const Vec3 v = G.node(p);
    std::size_t idx[64];
    double w[64];
    for (std::size_t q = 0; q < N; ++q) {
      if (q == p) continue;
      const Vec3 vs = G.node(q);
      const PairFrame fr = pair_frame(v, vs);
      const double c = h3 * kinetic_factor(fr.u, cfg.gamma, cfg.delta);
      // Loss: mu_* F + F_* mu with F = sq f.
      row[p] -= c * ws.lambda() * mu[q] * sq[p];
      row[q] -= c * ws.lambda() * mu[p] * sq[q];
      for (const auto& sn : ws.sigma()) {
        Vec3 vp, vps;
        post_collision(v, vs, rotate_to(sn.dir, fr.a, fr.e1, fr.e2), vp, vps);
        const double mps = Imu(vps), mp = Imu(vp);
        if (mps != 0.0) {
          const int n = Imu.stencil(vp, idx, w);
          for (int t = 0; t < n; ++t) row[idx[t]] += c * sn.w * mps * w[t] * sq[idx[t]];
        }
        if (mp != 0.0) {
          const int n = Imu.stencil(vps, idx, w);
          for (int t = 0; t < n; ++t) row[idx[t]] += c * sn.w * mp * w[t] * sq[idx[t]];
        }
      }
    }
    const double s = -1.0 / sq[p];
    for (std::size_t q = 0; q < N; ++q) A(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = s * row[q];
  });
  return A;
}

namespace {
enum class Kin { Exact, Japanese };

double seminorm_R_impl(const Field& g, const Field& f, const CollisionWorkspace& ws, Kin kind) {
  check_grid(g, ws);
  check_grid(f, ws);
  const VelocityGrid& G = *ws.grid();
  const GridInterpolator If(f, ws.order());
  const double h6 = G.cell_volume() * G.cell_volume();
  const auto& cfg = ws.kernel();
  std::vector<double> per(G.size(), 0.0);
  parallel_for(G.size(), ws.threads(), [&](std::size_t p) {
    const Vec3 v = G.node(p);
    std::vector<double> terms;
    for (std::size_t q = 0; q < G.size(); ++q) {
      if (q == p || g[q] == 0.0) continue;
      const Vec3 vs = G.node(q);
      const PairFrame fr = pair_frame(v, vs);
      const double kin =
          kind == Kin::Exact ? kinetic_factor(fr.u, cfg.gamma, cfg.delta) : std::pow(japanese(fr.u), cfg.gamma);
      double acc = 0.0;
      for (const auto& sn : ws.sigma()) {
        Vec3 vp, vps;
        post_collision(v, vs, rotate_to(sn.dir, fr.a, fr.e1, fr.e2), vp, vps);
        const double d = If(vp) - f[p];
        acc += sn.w * d * d;
      }
      terms.push_back(h6 * kin * g[q] * acc);
    }
    per[p] = pairwise_sum(terms);
  });
  return pairwise_sum(per);
}
}  // namespace

double seminorm_R(const Field& g, const Field& f, const CollisionWorkspace& ws) {
  return seminorm_R_impl(g, f, ws, Kin::Exact);
}

double seminorm_R_star(const Field& g, const Field& f, const CollisionWorkspace& ws) {
  return seminorm_R_impl(g, f, ws, Kin::Japanese);
}

double seminorm_M(const Field& f, const CollisionWorkspace& ws) {
  check_grid(f, ws);
  const VelocityGrid& G = *ws.grid();
  const double h6 = G.cell_volume() * G.cell_volume();
  const auto& cfg = ws.kernel();
  std::vector<double> per(G.size(), 0.0);
  parallel_for(G.size(), ws.threads(), [&](std::size_t q) {
    if (f[q] == 0.0) return;
    const Vec3 vs = G.node(q);
    std::vector<double> terms;
    for (std::size_t p = 0; p < G.size(); ++p) {
      if (q == p) continue;
      const Vec3 v = G.node(p);
      const PairFrame fr = pair_frame(v, vs);
      const double sv = sqrt_maxwellian_value(v);
      double acc = 0.0;
      for (const auto& sn : ws.sigma()) {
        Vec3 vp, vps;
        post_collision(v, vs, rotate_to(sn.dir, fr.a, fr.e1, fr.e2), vp, vps);
        const double d = sqrt_maxwellian_value(vp) - sv;
        acc += sn.w * d * d;
      }
      terms.push_back(h6 * kinetic_factor(fr.u, cfg.gamma, cfg.delta) * f[q] * f[q] * acc);
    }
    per[q] = pairwise_sum(terms);
  });
  return pairwise_sum(per);
}

}  // namespace boltzgap
