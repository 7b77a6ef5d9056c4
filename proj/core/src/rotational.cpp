#include "boltzgap/rotational.hpp"

#include <algorithm>
#include <stdexcept>

#include "boltzgap/quadrature.hpp"
#include "parallel.hpp"

namespace boltzgap {

double engine_kinetic_factor(double u, const KernelConfig& cfg) { return kinetic_factor(u, cfg.gamma, cfg.delta); }

using detail::parallel_for;

namespace {

double mu_radial(double r) { return std::pow(2.0 * kPi, -1.5) * std::exp(-0.5 * r * r); }

/// Sigma nodes in the local frame (u_hat, e1, e2), mirror-reduced in phi.
struct LocalSigma {
  std::vector<double> a, b, c, w;  // sigma = a u_hat + b e1 + c e2, weight w_theta b^eps w_phi
  double lambda = 0.0;             // int b^eps d sigma by the rule
};

LocalSigma make_local_sigma(const AngularRule& rule) {
  LocalSigma ls;
  const int nphi = static_cast<int>(rule.cos_phi.size());
  for (std::size_t i = 0; i < rule.theta.size(); ++i) {
    const double wb = rule.w_theta[i] * rule.b[i];
    if (wb == 0.0) continue;
    const double ct = std::cos(rule.theta[i]), st = std::sin(rule.theta[i]);
    for (int j = 0; j <= nphi / 2; ++j) {
      const double sym = (j == 0 || j == nphi / 2) ? 1.0 : 2.0;
      ls.a.push_back(ct);
      ls.b.push_back(st * rule.cos_phi[j]);
      ls.c.push_back(st * rule.sin_phi[j]);
      ls.w.push_back(wb * rule.w_phi * sym);
    }
  }
  ls.lambda = rule.total_b();
  return ls;
}

std::vector<double> split_panels(std::vector<double> cuts, double lo, double hi, double width) {
  cuts.push_back(lo);
  cuts.push_back(hi);
  std::vector<double> pts;
  for (double c : cuts)
    if (c >= lo && c <= hi) pts.push_back(c);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(), [](double x, double y) { return std::abs(x - y) < 1e-12; }), pts.end());
  std::vector<double> edges{pts.front()};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double len = pts[i] - pts[i - 1];
    const int n = std::max(1, static_cast<int>(std::ceil(len / width - 1e-9)));
    for (int k = 1; k <= n; ++k) edges.push_back(pts[i - 1] + len * k / n);
  }
  return edges;
}

/// Node data handed to the integrand callbacks.
struct Node {
  double W0;      // measure of (|u|, |v_*|) including 2 pi and |u|^gamma
  double s;       // |v_*|
  Vec3 vstar, m;  // v_*, (v + v_*)/2
  Vec3 uhat, e1;  // frame, e2 = y
  double rho;
};

/// Quadrature around v = r e_z over the ball |v_*| <= R_dom. `on_node` is
/// called once per (|u|, |v_*|) node, `on_sigma` for every sigma node with
/// the post-collision velocities.
template <class NodeFn, class SigmaFn>
void integrate_around(double r, double R_dom, const EngineQuadrature& q, const KernelConfig& cfg,
                      const LocalSigma& ls, NodeFn&& on_node, SigmaFn&& on_sigma) {
  const double rho_lo = std::max(0.0, r - R_dom), rho_hi = r + R_dom;
  const auto edges = split_panels({R_dom - r, r}, rho_lo, rho_hi, q.rho_panel);
  const auto rq = composite_gauss(edges, q.rho_nodes);
  const std::size_t ns = ls.w.size();
  for (std::size_t ir = 0; ir < rq.size(); ++ir) {
    const double rho = rq.x[ir];
    const double s_lo = std::abs(r - rho), s_hi = std::min(r + rho, R_dom);
    if (!(s_hi > s_lo)) continue;
    const double kin = engine_kinetic_factor(rho, cfg);
    const int nsp = std::max(1, static_cast<int>(std::ceil((s_hi - s_lo) / q.s_panel)));
    for (int p = 0; p < nsp; ++p) {
      const auto sq = gauss_legendre(q.s_nodes, s_lo + (s_hi - s_lo) * p / nsp, s_lo + (s_hi - s_lo) * (p + 1) / nsp);
      for (std::size_t is = 0; is < sq.size(); ++is) {
        const double s = sq.x[is];
        const double c = std::clamp((r * r + rho * rho - s * s) / (2.0 * r * rho), -1.0, 1.0);
        const double st = std::sqrt(std::max(0.0, 1.0 - c * c));
        Node nd;
        nd.rho = rho;
        nd.s = s;
        nd.W0 = 2.0 * kPi * rho * s / r * rq.w[ir] * sq.w[is] * kin;
        nd.uhat = {st, 0.0, c};
        nd.e1 = {c, 0.0, -st};
        nd.vstar = {-rho * st, 0.0, r - rho * c};
        nd.m = {-0.5 * rho * st, 0.0, r - 0.5 * rho * c};
        if (!on_node(nd)) continue;
        const double h = 0.5 * rho;
        for (std::size_t k = 0; k < ns; ++k) {
          const Vec3 sig{ls.a[k] * st + ls.b[k] * c, ls.c[k], ls.a[k] * c - ls.b[k] * st};
          const Vec3 vp{nd.m[0] + h * sig[0], nd.m[1] + h * sig[1], nd.m[2] + h * sig[2]};
          const Vec3 vps{nd.m[0] - h * sig[0], nd.m[1] - h * sig[1], nd.m[2] - h * sig[2]};
          on_sigma(nd.W0 * ls.w[k], vp, vps);
        }
      }
    }
  }
}

/// Accumulates coef * B_k(|x|) P_l(cos angle(x, e_z)) into acc[l * nb + k].
class PointAccumulator {
 public:
  PointAccumulator(const BSplineBasis& basis, int l_max)
      : basis_(basis), nb_(basis.size()), l_max_(l_max), acc_((l_max + 1) * nb_, 0.0), P_(l_max + 1) {}

  void reset() { std::fill(acc_.begin(), acc_.end(), 0.0); }
  void add(const Vec3& x, double coef) {
    if (coef == 0.0) return;
    const double R = norm3(x);
    double bv[4];
    const int first = basis_.eval(R, bv);
    if (first < 0) return;
    const double ct = R > 0.0 ? x[2] / R : 1.0;
    legendre_table(l_max_, ct, P_.data());
    const int na = std::min(4, nb_ - first);
    for (int a = 0; a < na; ++a) {
      const double t = coef * bv[a];
      double* col = acc_.data() + first + a;
      for (int l = 0; l <= l_max_; ++l) col[l * nb_] += t * P_[l];
    }
  }
  double at(int l, int k) const { return acc_[l * nb_ + k]; }

 private:
  const BSplineBasis& basis_;
  int nb_, l_max_;
  std::vector<double> acc_;
  std::vector<double> P_;
};

}  // namespace

RotationalOperator::RotationalOperator(const KernelConfig& cfg, RadialPtr radial, int l_max, Integrand kind, Part part,
                                       EngineQuadrature quad)
    : cfg_(cfg), radial_(std::move(radial)), l_max_(l_max), kind_(kind), part_(part) {
  cfg_.validate();
  if (l_max < 0) throw std::invalid_argument("l_max must be >= 0");
  build(quad);
}

void RotationalOperator::build(const EngineQuadrature& q) {
  const AngularRule rule = angular_quadrature(cfg_);
  const LocalSigma ls = make_local_sigma(rule);
  const auto& r = radial_->nodes();
  const std::size_t nr = r.size();
  const int nb = radial_->size();
  const double R_dom = q.domain_radius > 0.0 ? q.domain_radius
                       : kind_ == Integrand::Linearized
                           ? q.partner_radius
                           : std::hypot(radial_->r_max(), q.partner_radius);
  const bool gain = part_ != Part::Loss, loss = part_ != Part::Gain;

  E_.assign(l_max_ + 1, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nr), nb));
  nu_.assign(nr, 0.0);

  parallel_for(nr, q.threads, [&](std::size_t i) {
    const double ri = r[i];
    PointAccumulator acc(radial_->basis(), l_max_);
    double diag = 0.0;
    if (kind_ == Integrand::Linearized) {
      const double Pv = sqrt_maxwellian_radial(ri);
      double Pstar = 0.0;
      integrate_around(
          ri, R_dom, q, cfg_, ls,
          [&](const Node& nd) {
            Pstar = sqrt_maxwellian_radial(nd.s);
            if (loss) {
              diag += nd.W0 * ls.lambda * Pstar * Pstar;
              acc.add(nd.vstar, nd.W0 * ls.lambda * Pv * Pstar);
            }
            return gain && Pstar > 1e-300;
          },
          [&](double W, const Vec3& vp, const Vec3& vps) {
            const double Pp = sqrt_maxwellian_radial(norm3(vp));
            const double Pps = sqrt_maxwellian_radial(norm3(vps));
            acc.add(vp, -W * Pstar * Pps);
            acc.add(vps, -W * Pstar * Pp);
          });
    } else {
      const double pv = mu_radial(ri);
      integrate_around(
          ri, R_dom, q, cfg_, ls,
          [&](const Node& nd) {
            if (loss) {
              diag -= nd.W0 * ls.lambda * mu_radial(nd.s);
              acc.add(nd.vstar, -nd.W0 * ls.lambda * pv);
            }
            return gain;
          },
          [&](double W, const Vec3& vp, const Vec3& vps) {
            acc.add(vp, W * mu_radial(norm3(vps)));
            acc.add(vps, W * mu_radial(norm3(vp)));
          });
    }
    nu_[i] = kind_ == Integrand::Linearized ? diag : -diag;
    double bv[4];
    const int first = radial_->basis().eval(ri, bv);
    for (int l = 0; l <= l_max_; ++l) {
      auto row = E_[l].row(static_cast<Eigen::Index>(i));
      for (int k = 0; k < nb; ++k) row(k) = acc.at(l, k);
      for (int a = 0; a < 4 && first + a < nb; ++a) row(first + a) += diag * bv[a];
    }
  });

  Eigen::VectorXd d(static_cast<Eigen::Index>(nr));
  for (std::size_t i = 0; i < nr; ++i) d(static_cast<Eigen::Index>(i)) = radial_->weights()[i] * r[i] * r[i];
  A_raw_.resize(l_max_ + 1);
  A_.resize(l_max_ + 1);
  for (int l = 0; l <= l_max_; ++l) {
    Eigen::MatrixXd A = radial_->phi().transpose() * d.asDiagonal() * E_[l];
    for (int k = 0; k < radial_->first_active(l); ++k) {
      A.row(k).setZero();
      A.col(k).setZero();
      E_[l].col(k).setZero();
    }
    A_raw_[l] = A;
    A_[l] = 0.5 * (A + A.transpose());
  }
}

double RotationalOperator::asymmetry(int l) const {
  const auto& A = A_raw_.at(l);
  const double n = A.norm();
  return n > 0.0 ? (A - A.transpose()).norm() / n : 0.0;
}

Eigen::MatrixXd RotationalOperator::apply_nodes(const SpectralField& f) const {
  if (f.radial != radial_) throw std::invalid_argument("radial discretization mismatch");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(radial_->nodes().size()), f.n_lm());
  for (int lm = 0; lm < f.n_lm(); ++lm) {
    const int l = SpectralField::degree_of(lm);
    if (l > l_max_) continue;
    out.col(lm) = E_[l] * f.coeffs.col(lm);
  }
  return out;
}

SpectralField RotationalOperator::apply(const SpectralField& f) const {
  if (f.radial != radial_) throw std::invalid_argument("radial discretization mismatch");
  SpectralField out = SpectralField::zero(radial_, f.l_max);
  for (int lm = 0; lm < f.n_lm(); ++lm) {
    const int l = SpectralField::degree_of(lm);
    if (l > l_max_) continue;
    out.coeffs.col(lm) = radial_->solve_mass(l, A_raw_[l] * f.coeffs.col(lm));
  }
  return out;
}

double RotationalOperator::bilinear(const SpectralField& f, const SpectralField& g) const {
  if (f.radial != radial_ || g.radial != radial_) throw std::invalid_argument("radial discretization mismatch");
  double s = 0.0;
  for (int lm = 0; lm < std::min(f.n_lm(), g.n_lm()); ++lm) {
    const int l = SpectralField::degree_of(lm);
    if (l > l_max_) continue;
    s += g.coeffs.col(lm).dot(A_[l] * f.coeffs.col(lm));
  }
  return s;
}

double RotationalOperator::bilinear_raw(const SpectralField& f, const SpectralField& g) const {
  double s = 0.0;
  for (int lm = 0; lm < std::min(f.n_lm(), g.n_lm()); ++lm) {
    const int l = SpectralField::degree_of(lm);
    if (l > l_max_) continue;
    s += g.coeffs.col(lm).dot(A_raw_[l] * f.coeffs.col(lm));
  }
  return s;
}

std::vector<Eigen::MatrixXd> seminorm_R_blocks(const KernelConfig& cfg, const RadialPtr& radial, int l_max,
                                               const EngineQuadrature& q) {
  cfg.validate();
  const AngularRule rule = angular_quadrature(cfg);
  const LocalSigma ls = make_local_sigma(rule);
  const auto& r = radial->nodes();
  const std::size_t nr = r.size();
  const int nb = radial->size();
  const double R_dom = q.domain_radius > 0.0 ? q.domain_radius : q.partner_radius;
  const auto& basis = radial->basis();

  struct Contribution {
    Eigen::MatrixXd C;  // sum W mu_* B(r') B(r')^T
    Eigen::MatrixXd Y;  // nb x (l_max+1): sum W mu_* P_l(cos') B(r')
    double D = 0.0;     // sum W mu_* (sigma integrated)
  };
  std::vector<Contribution> parts(nr);
  parallel_for(nr, q.threads, [&](std::size_t i) {
    Contribution c;
    c.C = Eigen::MatrixXd::Zero(nb, nb);
    c.Y = Eigen::MatrixXd::Zero(nb, l_max + 1);
    std::vector<double> P(l_max + 1);
    double mstar = 0.0;
    integrate_around(
        r[i], R_dom, q, cfg, ls,
        [&](const Node& nd) {
          mstar = mu_radial(nd.s);
          c.D += nd.W0 * ls.lambda * mstar;
          return mstar > 1e-300;
        },
        [&](double W, const Vec3& vp, const Vec3&) {
          const double R = norm3(vp);
          double bv[4];
          const int first = basis.eval(R, bv);
          if (first < 0) return;
          const double w = W * mstar;
          const int na = std::min(4, nb - first);
          for (int a = 0; a < na; ++a)
            for (int b = 0; b < na; ++b) c.C(first + a, first + b) += w * bv[a] * bv[b];
          legendre_table(l_max, R > 0.0 ? vp[2] / R : 1.0, P.data());
          for (int a = 0; a < na; ++a)
            for (int l = 0; l <= l_max; ++l) c.Y(first + a, l) += w * P[l] * bv[a];
        });
    parts[i] = std::move(c);
  });

  std::vector<Eigen::MatrixXd> R(l_max + 1, Eigen::MatrixXd::Zero(nb, nb));
  for (std::size_t i = 0; i < nr; ++i) {
    const double wi = radial->weights()[i] * r[i] * r[i];
    Eigen::VectorXd b0 = Eigen::VectorXd::Zero(nb);
    double bv[4];
    const int first = basis.eval(r[i], bv);
    for (int a = 0; a < 4 && first + a < nb; ++a) b0(first + a) = bv[a];
    const Eigen::MatrixXd common = parts[i].C + parts[i].D * b0 * b0.transpose();
    for (int l = 0; l <= l_max; ++l) {
      const Eigen::MatrixXd X = parts[i].Y.col(l) * b0.transpose();
      R[l] += wi * (common - X - X.transpose());
    }
  }
  for (int l = 0; l <= l_max; ++l)
    for (int k = 0; k < radial->first_active(l); ++k) {
      R[l].row(k).setZero();
      R[l].col(k).setZero();
    }
  return R;
}

double commutator_pairing(const SpectralField& f, Localizer kind, double M, const RotationalOperator& T) {
  const auto chi = [&](double r) { return localizer(kind, r, M); };
  const SpectralField cf = multiply_radial(f, chi);
  const SpectralField c2f = multiply_radial(f, [&](double r) { return chi(r) * chi(r); });
  return T.bilinear_raw(cf, cf) - T.bilinear_raw(f, c2f);
}

double seminorm_R(const std::vector<Eigen::MatrixXd>& blocks, const SpectralField& f) {
  double s = 0.0;
  for (int lm = 0; lm < f.n_lm(); ++lm) {
    const int l = SpectralField::degree_of(lm);
    if (l >= static_cast<int>(blocks.size())) continue;
    s += f.coeffs.col(lm).dot(blocks[l] * f.coeffs.col(lm));
  }
  return s;
}

std::vector<double> maxwell_defect_weight(const KernelConfig& cfg, const std::vector<double>& radii,
                                          const EngineQuadrature& q, int c_nodes) {
  cfg.validate();
  const AngularRule rule = angular_quadrature(cfg);
  const LocalSigma ls = make_local_sigma(rule);
  const auto cq = gauss_legendre(c_nodes, -1.0, 1.0);
  std::vector<double> out(radii.size(), 0.0);
  parallel_for(radii.size(), q.threads, [&](std::size_t i) {
    const double rs = radii[i];
    const double rho_max = std::sqrt(2.0) * (q.partner_radius + rs) + 1.0;
    const auto rq = composite_gauss(split_panels({}, 0.0, rho_max, q.rho_panel), q.rho_nodes);
    std::vector<double> terms;
    for (std::size_t ir = 0; ir < rq.size(); ++ir) {
      const double rho = rq.x[ir];
      const double kin = engine_kinetic_factor(rho, cfg);
      for (std::size_t ic = 0; ic < cq.size(); ++ic) {
        const double c = cq.x[ic], st = std::sqrt(std::max(0.0, 1.0 - c * c));
        const double W0 = 2.0 * kPi * rho * rho * rq.w[ir] * cq.w[ic] * kin;
        const Vec3 v{rho * st, 0.0, rs + rho * c};
        const double sv = sqrt_maxwellian_value(v);
        const Vec3 m{0.5 * rho * st, 0.0, rs + 0.5 * rho * c};
        double acc = 0.0;
        for (std::size_t k = 0; k < ls.w.size(); ++k) {
          const Vec3 sig{ls.a[k] * st + ls.b[k] * c, ls.c[k], ls.a[k] * c - ls.b[k] * st};
          const Vec3 vp{m[0] + 0.5 * rho * sig[0], m[1] + 0.5 * rho * sig[1], m[2] + 0.5 * rho * sig[2]};
          const double d = sqrt_maxwellian_value(vp) - sv;
          acc += ls.w[k] * d * d;
        }
        terms.push_back(W0 * acc);
      }
    }
    out[i] = pairwise_sum(terms);
  });
  return out;
}

double seminorm_M(const std::vector<double>& weight, const SpectralField& f) {
  const auto& r = f.radial->nodes();
  if (weight.size() != r.size()) throw std::invalid_argument("weight must be sampled at the radial nodes");
  const Eigen::MatrixXd vals = f.node_values();
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i)
    s += f.radial->weights()[i] * r[i] * r[i] * weight[i] * vals.row(static_cast<Eigen::Index>(i)).squaredNorm();
  return s;
}

}  // namespace boltzgap
