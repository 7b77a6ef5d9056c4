#include "boltzgap/kernel.hpp"

#include <algorithm>
#include <stdexcept>

#include "boltzgap/quadrature.hpp"

namespace boltzgap {

namespace {
constexpr double kHalfPi = kPi / 2.0;
constexpr double kGeometricRatio = 1.05;
constexpr double kGradingSwitch = 0.2;
constexpr double kUniformPanel = 0.05;
}  // namespace

void KernelConfig::validate() const {
  if (!(gamma > -3.0 && gamma <= 2.0)) throw std::invalid_argument("gamma must lie in (-3, 2]");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("s must lie in (0, 1)");
  if (!(eps > 0.0 && eps <= std::sqrt(0.5) + 1e-15)) throw std::invalid_argument("eps must lie in (0, sqrt(2)/2]");
  if (!(gamma + 2.0 * s > -1.0)) throw std::invalid_argument("gamma + 2s must exceed -1");
  if (n_theta < 64) throw std::invalid_argument("n_theta must be >= 64");
  if (n_phi < 16 || n_phi % 2 != 0) throw std::invalid_argument("n_phi must be even and >= 16");
  if (K != 1.0) throw std::invalid_argument("only K = 1 is supported");
  if (angular_refine < 1 || gauss_per_panel < 1) throw std::invalid_argument("bad angular refinement controls");
  if (delta < 0.0) throw std::invalid_argument("delta must be nonnegative");
}

double b_profile(double theta, double s) {
  if (theta > kHalfPi) return 0.0;
  if (!(theta > 0.0)) throw std::domain_error("b_profile is singular at theta = 0");
  return std::pow(theta, -1.0 - 2.0 * s) / std::sin(theta);
}

double b_eps(double theta, double s, double eps) {
  if (theta > kHalfPi) return 0.0;
  const double cut = 1.0 - bump_phi(std::sin(0.5 * theta) / eps);
  if (cut == 0.0) return 0.0;
  return b_profile(theta, s) * cut;
}

double theta_min(double eps) { return 2.0 * std::asin(std::min(1.0, 0.75 * eps)); }

std::vector<double> theta_panel_edges(double eps, int min_nodes, int refine, int per_panel) {
  const double tmin = theta_min(eps);
  // Geometric panels cover the cutoff transition as well as the singular end.
  const double knee = 2.0 * std::asin(std::min(1.0, 4.0 * eps / 3.0));
  const double grade_to = std::min(kHalfPi, std::max(kGradingSwitch, knee));
  const int min_panels = (min_nodes * refine + per_panel - 1) / per_panel;
  // Large eps: the graded part is the whole band, so it alone must meet the node count.
  double ratio = std::pow(kGeometricRatio, 1.0 / refine);
  if (grade_to >= kHalfPi) ratio = std::min(ratio, std::pow(kHalfPi / tmin, 1.0 / min_panels));
  std::vector<double> edges{tmin};
  if (tmin < grade_to) {
    while (edges.back() * ratio < grade_to) edges.push_back(edges.back() * ratio);
    edges.push_back(grade_to);
  }
  const double a = edges.back();
  const int n_geo = static_cast<int>(edges.size()) - 1;
  if (a >= kHalfPi) return edges;
  const int by_width = static_cast<int>(std::ceil((kHalfPi - a) / kUniformPanel)) * refine;
  const int n_uni = std::max(by_width, min_panels - n_geo);
  for (int i = 1; i <= n_uni; ++i) edges.push_back(a + (kHalfPi - a) * i / n_uni);
  return edges;
}

double AngularRule::total_weight() const {
  double s = 0.0;
  for (double w : w_theta) s += w;
  return s * w_phi * static_cast<double>(cos_phi.size());
}

double AngularRule::total_b() const {
  double s = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) s += w_theta[i] * b[i];
  return s * w_phi * static_cast<double>(cos_phi.size());
}

AngularRule angular_quadrature(const KernelConfig& cfg) {
  cfg.validate();
  AngularRule r;
  const auto edges = theta_panel_edges(cfg.eps, cfg.n_theta, cfg.angular_refine, cfg.gauss_per_panel);
  const auto q = composite_gauss(edges, cfg.gauss_per_panel);
  r.theta = q.x;
  r.w_theta.resize(q.size());
  r.b.resize(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    r.w_theta[i] = q.w[i] * std::sin(q.x[i]);
    r.b[i] = b_eps(q.x[i], cfg.s, cfg.eps);
  }
  const int nphi = cfg.n_phi * cfg.angular_refine;
  r.w_phi = 2.0 * kPi / nphi;
  for (int j = 0; j < nphi; ++j) {
    const double p = 2.0 * kPi * j / nphi;
    r.cos_phi.push_back(std::cos(p));
    r.sin_phi.push_back(std::sin(p));
  }
  return r;
}

double weight_Weps(double r, double eps, double s) {
  const double ph = bump_phi(eps * r);
  double w = 0.0;
  if (ph > 0.0) w += std::pow(japanese(r), s) * ph;
  if (ph < 1.0) w += std::pow(eps, -s) * (1.0 - ph);
  return w;
}

double symbol_A(double xi, const KernelConfig& cfg) {
  if (xi < 0.0) throw std::invalid_argument("xi magnitude must be nonnegative");
  if (xi == 0.0) return 0.0;
  auto edges = theta_panel_edges(cfg.eps, cfg.n_theta, cfg.angular_refine, cfg.gauss_per_panel);
  // Split at the kink of min(xi^2 sin^2(theta/2), 1).
  if (xi > 1.0 / std::sin(kHalfPi / 2.0)) {
    const double tk = 2.0 * std::asin(1.0 / xi);
    if (tk > edges.front() && tk < edges.back()) {
      edges.insert(std::upper_bound(edges.begin(), edges.end(), tk), tk);
    }
  }
  const auto q = composite_gauss(edges, 2 * cfg.gauss_per_panel);
  std::vector<double> terms(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double sh = std::sin(0.5 * q.x[i]);
    terms[i] = q.w[i] * std::sin(q.x[i]) * b_eps(q.x[i], cfg.s, cfg.eps) * std::min(xi * xi * sh * sh, 1.0);
  }
  return 2.0 * kPi * pairwise_sum(terms);
}

}  // namespace boltzgap
