#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace boltzgap {

using Vec3 = std::array<double, 3>;
using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

inline double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }
inline double japanese(double r) { return std::sqrt(1.0 + r * r); }

/// Uniform lattice on [-L, L)^3 with n nodes per axis, and its dual lattice
/// xi_m = pi m / L (m signed, FFT ordering).
class VelocityGrid {
 public:
  VelocityGrid(int n_per_axis, double half_width);

  int n() const { return n_; }
  double half_width() const { return L_; }
  double spacing() const { return h_; }
  double cell_volume() const { return h_ * h_ * h_; }
  double dual_spacing() const { return kPi / L_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }
  double coord(int i) const { return -L_ + i * h_; }
  Vec3 node(int i, int j, int k) const { return {coord(i), coord(j), coord(k)}; }
  Vec3 node(std::size_t idx) const;
  /// Signed mode number of FFT index i.
  int mode(int i) const { return i < n_ / 2 ? i : i - n_; }
  Vec3 dual_node(std::size_t idx) const;

  bool operator==(const VelocityGrid& o) const { return n_ == o.n_ && L_ == o.L_; }

 private:
  int n_;
  double L_;
  double h_;
};

using GridPtr = std::shared_ptr<const VelocityGrid>;

GridPtr make_grid(int n_per_axis, double half_width);

template <class T>
class BasicField {
 public:
  BasicField() = default;
  explicit BasicField(GridPtr grid) : grid_(std::move(grid)), values_(grid_->size(), T{}) {}
  BasicField(GridPtr grid, std::vector<T> values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_->size()) throw std::invalid_argument("field size does not match grid");
  }

  template <class Fn>
  static BasicField from_function(const GridPtr& grid, Fn&& fn) {
    BasicField f(grid);
    for (std::size_t q = 0; q < grid->size(); ++q) f.values_[q] = fn(grid->node(q));
    return f;
  }

  const GridPtr& grid_ptr() const { return grid_; }
  const VelocityGrid& grid() const { return *grid_; }
  std::size_t size() const { return values_.size(); }
  T& operator[](std::size_t q) { return values_[q]; }
  const T& operator[](std::size_t q) const { return values_[q]; }
  std::vector<T>& values() { return values_; }
  const std::vector<T>& values() const { return values_; }
  T* data() { return values_.data(); }
  const T* data() const { return values_.data(); }

  BasicField& operator+=(const BasicField& o) {
    check_same(o);
    for (std::size_t q = 0; q < values_.size(); ++q) values_[q] += o.values_[q];
    return *this;
  }
  BasicField& operator-=(const BasicField& o) {
    check_same(o);
    for (std::size_t q = 0; q < values_.size(); ++q) values_[q] -= o.values_[q];
    return *this;
  }
  BasicField& operator*=(T a) {
    for (auto& x : values_) x *= a;
    return *this;
  }
  friend BasicField operator+(BasicField a, const BasicField& b) { return a += b; }
  friend BasicField operator-(BasicField a, const BasicField& b) { return a -= b; }
  friend BasicField operator*(T s, BasicField a) { return a *= s; }
  friend BasicField operator*(BasicField a, T s) { return a *= s; }

  void check_same(const BasicField& o) const {
    if (!grid_ || !o.grid_ || !(*grid_ == *o.grid_)) throw std::invalid_argument("grid mismatch");
  }

 private:
  GridPtr grid_;
  std::vector<T> values_;
};

using Field = BasicField<double>;
using ComplexField = BasicField<cplx>;

/// Pointwise product.
Field multiply(const Field& a, const Field& b);
/// Pointwise product with a radial weight w(|v|).
Field multiply_radial(const Field& f, const std::function<double(double)>& w);
Field real_part(const ComplexField& f);
ComplexField to_complex(const Field& f);

/// Pairwise (tree) sum; deterministic and accurate.
double pairwise_sum(const double* x, std::size_t n);
double pairwise_sum(const std::vector<double>& x);

/// Discrete L^2 inner product sum f g h^3.
double inner(const Field& f, const Field& g);
double l2_norm(const Field& f);
/// Fraction of squared mass in the outer layer of width `layer` (boundary check).
double boundary_mass_fraction(const Field& f, double layer);

double maxwellian_value(const Vec3& v);
double sqrt_maxwellian_value(const Vec3& v);
double sqrt_maxwellian_radial(double r);
std::pair<Field, Field> maxwellian(const GridPtr& grid);

/// Smooth cutoff: 1 on [0, 3/4], 0 on [4/3, inf).
double bump_phi(double r);
inline double bump_phi(const Vec3& x) { return bump_phi(norm3(x)); }
/// psi(x) = phi(x/2) - phi(x), supported in [3/4, 8/3].
double bump_psi(double r);
inline double bump_psi(const Vec3& x) { return bump_psi(norm3(x)); }
/// phi_{-1} = phi, phi_j = psi(2^{-j} .)
double dyadic_weight(double r, int j);

Field dyadic_block(const Field& f, int j);

/// Localizing weights chi(v / M): phi (Low), 1 - phi (High) or psi (Ring).
enum class Localizer { Low, High, Ring };
double localizer(Localizer kind, double r, double M);

struct Split {
  Field low;
  Field high;
};
/// phi(eps D) f and its complement.
Split freq_split(const Field& f, double eps);
/// phi(eps v) f and its complement.
Split phase_split(const Field& f, double eps);

}  // namespace boltzgap
