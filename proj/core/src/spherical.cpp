#include "boltzgap/spherical.hpp"

#include <gsl/gsl_sf_legendre.h>

#include <algorithm>
#include <stdexcept>

#include "boltzgap/interpolation.hpp"
#include "boltzgap/quadrature.hpp"

namespace boltzgap {

void real_spherical_harmonics(int l_max, const Vec3& x, double* out) {
  const double r = norm3(x);
  double ct = 1.0, phi = 0.0;
  if (r > 0.0) {
    ct = std::clamp(x[2] / r, -1.0, 1.0);
    phi = std::atan2(x[1], x[0]);
  }
  thread_local std::vector<double> P;
  P.resize(gsl_sf_legendre_array_n(l_max));
  gsl_sf_legendre_array_e(GSL_SF_LEGENDRE_SPHARM, l_max, ct, 1.0, P.data());
  const double sq2 = std::sqrt(2.0);
  for (int l = 0; l <= l_max; ++l) {
    out[lm_index(l, 0)] = P[gsl_sf_legendre_array_index(l, 0)];
    for (int m = 1; m <= l; ++m) {
      const double p = sq2 * P[gsl_sf_legendre_array_index(l, m)];
      out[lm_index(l, m)] = p * std::cos(m * phi);
      out[lm_index(l, -m)] = p * std::sin(m * phi);
    }
  }
}

SphereRule::SphereRule(int deg, int lmax) : degree(deg), l_max(lmax) {
  if (deg < lmax || lmax < 0) throw std::invalid_argument("sphere rule degree must be >= l_max >= 0");
  const auto gc = gauss_legendre(deg + 1, -1.0, 1.0);
  const int na = 2 * deg + 1;
  const int nlm = lm_count(lmax);
  Y.resize(static_cast<Eigen::Index>(gc.size()) * na, nlm);
  std::vector<double> row(nlm);
  for (std::size_t i = 0; i < gc.size(); ++i) {
    const double ct = gc.x[i], st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int a = 0; a < na; ++a) {
      const double p = 2.0 * kPi * a / na;
      const Vec3 u{st * std::cos(p), st * std::sin(p), ct};
      nodes.push_back(u);
      weights.push_back(gc.w[i] * 2.0 * kPi / na);
      real_spherical_harmonics(lmax, u, row.data());
      for (int k = 0; k < nlm; ++k) Y(static_cast<Eigen::Index>(nodes.size() - 1), k) = row[k];
    }
  }
}

SphericalTransform::SphericalTransform(int l_max, std::vector<double> shells, std::vector<double> shell_weights,
                                       int quad_degree)
    : l_max_(l_max),
      shells_(std::move(shells)),
      weights_(std::move(shell_weights)),
      rule_(quad_degree < 0 ? l_max : quad_degree, l_max) {
  if (shells_.size() != weights_.size() || shells_.size() < 2) throw std::invalid_argument("bad shell layout");
  for (std::size_t i = 1; i < shells_.size(); ++i)
    if (!(shells_[i] > shells_[i - 1])) throw std::invalid_argument("shells must increase");
}

SphericalTransform SphericalTransform::for_grid(const VelocityGrid& grid, int l_max, int n_shells, int quad_degree) {
  const double R = grid.half_width() * std::sqrt(3.0);
  std::vector<double> r(n_shells + 1), w(n_shells + 1);
  const double dr = R / n_shells;
  for (int k = 0; k <= n_shells; ++k) {
    r[k] = k * dr;
    w[k] = (k == 0 || k == n_shells) ? 0.5 * dr : dr;
  }
  return SphericalTransform(l_max, std::move(r), std::move(w), quad_degree);
}

Eigen::MatrixXd SphericalTransform::analyze(const std::function<double(const Vec3&)>& f) const {
  const auto ns = static_cast<Eigen::Index>(shells_.size());
  const auto nn = static_cast<Eigen::Index>(rule_.nodes.size());
  Eigen::MatrixXd vals(ns, nn);
  for (Eigen::Index k = 0; k < ns; ++k) {
    const double r = shells_[k];
    for (Eigen::Index q = 0; q < nn; ++q) {
      const Vec3& u = rule_.nodes[q];
      vals(k, q) = rule_.weights[q] * f({r * u[0], r * u[1], r * u[2]});
    }
  }
  return vals * rule_.Y;
}

Eigen::MatrixXd SphericalTransform::analyze(const Field& f, int upsample) const {
  SmoothSampler sampler(f, upsample);
  return analyze([&](const Vec3& x) { return sampler(x); });
}

double SphericalTransform::interpolate_profile(const Eigen::MatrixXd& c, int lm, double r) const {
  constexpr int kPoints = 8;
  const int ns = static_cast<int>(shells_.size());
  const int np = std::min(kPoints, ns);
  const auto it = std::upper_bound(shells_.begin(), shells_.end(), r);
  int start = static_cast<int>(it - shells_.begin()) - np / 2;
  start = std::clamp(start, 0, ns - np);
  double s = 0.0;
  for (int a = 0; a < np; ++a) {
    double w = 1.0;
    const double ra = shells_[start + a];
    for (int b = 0; b < np; ++b)
      if (b != a) w *= (r - shells_[start + b]) / (ra - shells_[start + b]);
    s += w * c(start + a, lm);
  }
  return s;
}

Field SphericalTransform::synthesize(const Eigen::MatrixXd& coeffs, const GridPtr& grid) const {
  Field out(grid);
  const int nlm = n_lm();
  std::vector<double> Y(nlm);
  for (std::size_t q = 0; q < out.size(); ++q) {
    const Vec3 v = grid->node(q);
    const double r = norm3(v);
    real_spherical_harmonics(l_max_, v, Y.data());
    double s = 0.0;
    for (int lm = 0; lm < nlm; ++lm) s += Y[lm] * interpolate_profile(coeffs, lm, r);
    out[q] = s;
  }
  return out;
}

double SphericalTransform::energy(const Eigen::MatrixXd& coeffs) const {
  double e = 0.0;
  for (std::size_t k = 0; k < shells_.size(); ++k)
    e += weights_[k] * shells_[k] * shells_[k] * coeffs.row(static_cast<Eigen::Index>(k)).squaredNorm();
  return e;
}

double SphericalTransform::tail_fraction(const Eigen::MatrixXd& coeffs) const {
  // Shells carrying a negligible share of the energy only contribute noise.
  double peak = 0.0;
  for (Eigen::Index k = 0; k < coeffs.rows(); ++k) peak = std::max(peak, coeffs.row(k).squaredNorm());
  double worst = 0.0;
  const int first = lm_index(l_max_, -l_max_);
  for (Eigen::Index k = 0; k < coeffs.rows(); ++k) {
    const double tot = coeffs.row(k).squaredNorm();
    if (tot <= 1e-4 * peak || tot <= 1e-300) continue;
    const double tail = coeffs.row(k).segment(first, 2 * l_max_ + 1).squaredNorm();
    worst = std::max(worst, tail / tot);
  }
  return worst;
}

}  // namespace boltzgap
