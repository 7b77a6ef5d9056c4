#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "boltzgap/grid.hpp"

namespace boltzgap {

inline int lm_index(int l, int m) { return l * l + l + m; }
inline int lm_count(int l_max) { return (l_max + 1) * (l_max + 1); }

/// Orthonormal real spherical harmonics Y_l^m(x/|x|) for all l <= l_max,
/// written at out[lm_index(l, m)].
void real_spherical_harmonics(int l_max, const Vec3& x, double* out);

/// Legendre polynomials P_0..P_lmax at x.
inline void legendre_table(int l_max, double x, double* P) {
  P[0] = 1.0;
  if (l_max >= 1) P[1] = x;
  for (int l = 2; l <= l_max; ++l) P[l] = ((2 * l - 1) * x * P[l - 1] - (l - 1) * P[l - 2]) / l;
}

/// Gauss-Legendre in cos(theta) x uniform azimuth; exact for polynomials of
/// degree <= 2 * degree on the sphere.
struct SphereRule {
  explicit SphereRule(int degree, int l_max);
  int degree;
  int l_max;
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  Eigen::MatrixXd Y;  ///< nodes x lm values
};

/// Per-shell spherical-harmonic analysis of grid data and synthesis back to
/// the grid.
class SphericalTransform {
 public:
  SphericalTransform(int l_max, std::vector<double> shells, std::vector<double> shell_weights, int quad_degree = -1);
  /// n_shells + 1 equispaced radii on [0, L sqrt 3] with trapezoid weights.
  static SphericalTransform for_grid(const VelocityGrid& grid, int l_max = 16, int n_shells = 48, int quad_degree = -1);

  int l_max() const { return l_max_; }
  int n_lm() const { return lm_count(l_max_); }
  const std::vector<double>& shells() const { return shells_; }
  const std::vector<double>& shell_weights() const { return weights_; }
  const SphereRule& rule() const { return rule_; }

  /// shells x lm coefficients f_l^m(r_k) = int Y_l^m(sigma) f(r_k sigma) d sigma.
  Eigen::MatrixXd analyze(const std::function<double(const Vec3&)>& f) const;
  Eigen::MatrixXd analyze(const Field& f, int upsample = 4) const;
  /// Evaluate sum_lm F_lm(|v|) Y_lm(v/|v|) at the grid nodes, interpolating
  /// each profile between shells.
  Field synthesize(const Eigen::MatrixXd& coeffs, const GridPtr& grid) const;
  /// sum_k w_k r_k^2 sum_lm |F_lm(r_k)|^2.
  double energy(const Eigen::MatrixXd& coeffs) const;
  /// Largest per-shell fraction of energy carried by degree l_max, over shells
  /// holding at least 1e-4 of the peak shell energy.
  double tail_fraction(const Eigen::MatrixXd& coeffs) const;

 private:
  double interpolate_profile(const Eigen::MatrixXd& coeffs, int lm, double r) const;
  int l_max_;
  std::vector<double> shells_, weights_;
  SphereRule rule_;
};

}  // namespace boltzgap
