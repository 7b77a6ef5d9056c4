#include "boltzgap/spectral.hpp"

#include <stdexcept>

#include "boltzgap/interpolation.hpp"

namespace boltzgap {

SpectralField SpectralField::zero(RadialPtr radial, int l_max) {
  SpectralField f;
  f.coeffs = Eigen::MatrixXd::Zero(radial->size(), lm_count(l_max));
  f.radial = std::move(radial);
  f.l_max = l_max;
  return f;
}

namespace {
void check_compatible(const SpectralField& a, const SpectralField& b) {
  if (a.radial != b.radial || a.l_max != b.l_max) throw std::invalid_argument("spectral field layout mismatch");
}
}  // namespace

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  check_compatible(*this, o);
  coeffs += o.coeffs;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  check_compatible(*this, o);
  coeffs -= o.coeffs;
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  coeffs *= a;
  return *this;
}

Eigen::MatrixXd SpectralField::node_values() const { return radial->phi() * coeffs; }

double SpectralField::value(const Vec3& v) const {
  std::vector<double> Y(n_lm());
  real_spherical_harmonics(l_max, v, Y.data());
  const double r = norm3(v);
  double s = 0.0;
  for (int lm = 0; lm < n_lm(); ++lm) s += Y[lm] * radial->evaluate(coeffs.col(lm), r);
  return s;
}

SpectralField from_node_values(const Eigen::MatrixXd& vals, RadialPtr radial, int l_max) {
  SpectralField out = SpectralField::zero(radial, l_max);
  for (int lm = 0; lm < out.n_lm(); ++lm)
    out.coeffs.col(lm) = radial->project(vals.col(lm), SpectralField::degree_of(lm));
  return out;
}

SpectralField analyze_function(const std::function<double(const Vec3&)>& f, RadialPtr radial, int l_max,
                               int quad_degree) {
  const SphereRule rule(quad_degree < 0 ? 2 * l_max : quad_degree, l_max);
  const auto& r = radial->nodes();
  const auto nr = static_cast<Eigen::Index>(r.size());
  const auto nn = static_cast<Eigen::Index>(rule.nodes.size());
  Eigen::MatrixXd samples(nr, nn);
  for (Eigen::Index i = 0; i < nr; ++i)
    for (Eigen::Index q = 0; q < nn; ++q) {
      const Vec3& u = rule.nodes[q];
      samples(i, q) = rule.weights[q] * f({r[i] * u[0], r[i] * u[1], r[i] * u[2]});
    }
  return from_node_values(samples * rule.Y, std::move(radial), l_max);
}

SpectralField analyze_field(const Field& f, RadialPtr radial, int l_max, int quad_degree, int upsample) {
  SmoothSampler sampler(f, upsample);
  return analyze_function([&](const Vec3& x) { return sampler(x); }, std::move(radial), l_max, quad_degree);
}

SpectralField analyze_radial(const std::function<double(double)>& f, RadialPtr radial, int l_max) {
  SpectralField out = SpectralField::zero(radial, l_max);
  const double c = std::sqrt(4.0 * kPi);
  out.coeffs.col(0) = radial->project([&](double r) { return c * f(r); }, 0);
  return out;
}

Field synthesize(const SpectralField& f, const GridPtr& grid) {
  return Field::from_function(grid, [&](const Vec3& v) { return f.value(v); });
}

double spectral_inner(const SpectralField& a, const SpectralField& b) {
  check_compatible(a, b);
  double s = 0.0;
  for (int lm = 0; lm < a.n_lm(); ++lm) {
    const int l = SpectralField::degree_of(lm);
    s += a.coeffs.col(lm).dot(a.radial->mass(l) * b.coeffs.col(lm));
  }
  return s;
}

double spectral_weighted_norm2(const SpectralField& a, const std::function<double(double)>& w) {
  const Eigen::MatrixXd M0 = a.radial->weighted_mass(0, w);
  const Eigen::MatrixXd M1 = a.radial->weighted_mass(1, w);
  double s = 0.0;
  for (int lm = 0; lm < a.n_lm(); ++lm) {
    const Eigen::MatrixXd& M = SpectralField::degree_of(lm) == 0 ? M0 : M1;
    s += a.coeffs.col(lm).dot(M * a.coeffs.col(lm));
  }
  return s;
}

SpectralField multiply_radial(const SpectralField& a, const std::function<double(double)>& w) {
  Eigen::MatrixXd vals = a.node_values();
  const auto& r = a.radial->nodes();
  for (Eigen::Index i = 0; i < vals.rows(); ++i) vals.row(i) *= w(r[i]);
  return from_node_values(vals, a.radial, a.l_max);
}

}  // namespace boltzgap
