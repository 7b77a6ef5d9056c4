#include "boltzgap/grid.hpp"

#include <algorithm>

#include "boltzgap/fourier.hpp"

namespace boltzgap {

VelocityGrid::VelocityGrid(int n_per_axis, double half_width) : n_(n_per_axis), L_(half_width) {
  if (n_per_axis < 8 || n_per_axis % 2 != 0)
    throw std::invalid_argument("n_per_axis must be even and >= 8");
  if (!(half_width > 0.0)) throw std::invalid_argument("half_width must be positive");
  h_ = 2.0 * L_ / n_;
}

Vec3 VelocityGrid::node(std::size_t idx) const {
  const int k = static_cast<int>(idx % n_);
  const int j = static_cast<int>((idx / n_) % n_);
  const int i = static_cast<int>(idx / (static_cast<std::size_t>(n_) * n_));
  return node(i, j, k);
}

Vec3 VelocityGrid::dual_node(std::size_t idx) const {
  const int k = static_cast<int>(idx % n_);
  const int j = static_cast<int>((idx / n_) % n_);
  const int i = static_cast<int>(idx / (static_cast<std::size_t>(n_) * n_));
  const double d = dual_spacing();
  return {d * mode(i), d * mode(j), d * mode(k)};
}

GridPtr make_grid(int n_per_axis, double half_width) {
  return std::make_shared<const VelocityGrid>(n_per_axis, half_width);
}

Field multiply(const Field& a, const Field& b) {
  a.check_same(b);
  Field out(a.grid_ptr());
  for (std::size_t q = 0; q < a.size(); ++q) out[q] = a[q] * b[q];
  return out;
}

Field multiply_radial(const Field& f, const std::function<double(double)>& w) {
  Field out(f.grid_ptr());
  const auto& g = f.grid();
  for (std::size_t q = 0; q < f.size(); ++q) out[q] = f[q] * w(norm3(g.node(q)));
  return out;
}

Field real_part(const ComplexField& f) {
  Field out(f.grid_ptr());
  for (std::size_t q = 0; q < f.size(); ++q) out[q] = f[q].real();
  return out;
}

ComplexField to_complex(const Field& f) {
  ComplexField out(f.grid_ptr());
  for (std::size_t q = 0; q < f.size(); ++q) out[q] = f[q];
  return out;
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t m = n / 2;
  return pairwise_sum(x, m) + pairwise_sum(x + m, n - m);
}

double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

double inner(const Field& f, const Field& g) {
  f.check_same(g);
  std::vector<double> p(f.size());
  for (std::size_t q = 0; q < f.size(); ++q) p[q] = f[q] * g[q];
  return pairwise_sum(p) * f.grid().cell_volume();
}

double l2_norm(const Field& f) { return std::sqrt(inner(f, f)); }

double boundary_mass_fraction(const Field& f, double layer) {
  const auto& g = f.grid();
  const double L = g.half_width();
  double total = 0.0, outer = 0.0;
  for (std::size_t q = 0; q < f.size(); ++q) {
    const Vec3 v = g.node(q);
    const double m = std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
    const double e = f[q] * f[q];
    total += e;
    if (m > L - layer) outer += e;
  }
  return total > 0.0 ? outer / total : 0.0;
}

double maxwellian_value(const Vec3& v) {
  return std::pow(2.0 * kPi, -1.5) * std::exp(-0.5 * dot3(v, v));
}

double sqrt_maxwellian_radial(double r) { return std::pow(2.0 * kPi, -0.75) * std::exp(-0.25 * r * r); }

double sqrt_maxwellian_value(const Vec3& v) { return sqrt_maxwellian_radial(norm3(v)); }

std::pair<Field, Field> maxwellian(const GridPtr& grid) {
  Field mu = Field::from_function(grid, maxwellian_value);
  Field smu(grid);
  for (std::size_t q = 0; q < mu.size(); ++q) smu[q] = std::sqrt(mu[q]);
  return {std::move(mu), std::move(smu)};
}

namespace {
double eta(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }
double glue(double u) {
  const double a = eta(u), b = eta(1.0 - u);
  return a / (a + b);
}
}  // namespace

double bump_phi(double r) {
  r = std::abs(r);
  if (r <= 0.75) return 1.0;
  if (r >= 4.0 / 3.0) return 0.0;
  return glue((4.0 / 3.0 - r) / (4.0 / 3.0 - 0.75));
}

double bump_psi(double r) { return bump_phi(0.5 * r) - bump_phi(r); }

double dyadic_weight(double r, int j) {
  if (j < -1) throw std::invalid_argument("dyadic index must be >= -1");
  if (j == -1) return bump_phi(r);
  return bump_psi(std::ldexp(r, -j));
}

double localizer(Localizer kind, double r, double M) {
  if (!(M > 0.0)) throw std::invalid_argument("localizer scale must be positive");
  const double x = r / M;
  switch (kind) {
    case Localizer::Low:
      return bump_phi(x);
    case Localizer::High:
      return 1.0 - bump_phi(x);
    case Localizer::Ring:
      return bump_psi(x);
  }
  return 0.0;
}

Field dyadic_block(const Field& f, int j) {
  return multiply_radial(f, [j](double r) { return dyadic_weight(r, j); });
}

namespace {
void check_eps(double eps) {
  if (!(eps > 0.0) || eps > std::sqrt(0.5) + 1e-15) throw std::invalid_argument("eps must lie in (0, sqrt(2)/2]");
}
}  // namespace

Split freq_split(const Field& f, double eps) {
  check_eps(eps);
  Field low = apply_radial_multiplier(f, [eps](double k) { return bump_phi(eps * k); });
  Field high = f - low;
  return {std::move(low), std::move(high)};
}

Split phase_split(const Field& f, double eps) {
  check_eps(eps);
  Field low = multiply_radial(f, [eps](double r) { return bump_phi(eps * r); });
  Field high = f - low;
  return {std::move(low), std::move(high)};
}

}  // namespace boltzgap
