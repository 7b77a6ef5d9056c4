#pragma once

#include <vector>

#include "boltzgap/grid.hpp"

namespace boltzgap {

struct KernelConfig {
  double gamma = 0.0;
  double s = 0.5;
  double eps = 0.125;
  double K = 1.0;
  int n_theta = 64;  ///< minimum number of polar nodes
  int n_phi = 16;    ///< azimuthal nodes
  /// Regularization radius for |u|^gamma when gamma < 0. Zero means "use h/2"
  /// for grid-based evaluations.
  double delta = 0.0;
  /// Angular refinement factor (geometric ratio 1.05^(1/refine), refine x uniform panels).
  int angular_refine = 1;
  int gauss_per_panel = 2;

  void validate() const;
};

/// theta^{-1-2s} / sin(theta) on (0, pi/2], zero above.
double b_profile(double theta, double s);
/// b(theta) (1 - phi(sin(theta/2)/eps)).
double b_eps(double theta, double s, double eps);
/// Smallest angle where b^eps can be nonzero: 2 asin(3 eps / 4).
double theta_min(double eps);

/// Product rule for d sigma = sin(theta) d theta d phi on the band theta in
/// [theta_min, pi/2], relative to the polar axis.
struct AngularRule {
  std::vector<double> theta;
  std::vector<double> w_theta;  ///< includes sin(theta)
  std::vector<double> b;        ///< b^eps(theta)
  std::vector<double> cos_phi, sin_phi;
  double w_phi = 0.0;

  std::size_t size() const { return theta.size() * cos_phi.size(); }
  /// sum of weights (area of the band).
  double total_weight() const;
  /// int b^eps d sigma.
  double total_b() const;
};

AngularRule angular_quadrature(const KernelConfig& cfg);

/// Polar panel edges used by the angular rule (exposed for 1D integrals).
std::vector<double> theta_panel_edges(double eps, int min_nodes, int refine, int per_panel);

double weight_Weps(double r, double eps, double s);
inline double weight_Weps(const Vec3& v, double eps, double s) { return weight_Weps(norm3(v), eps, s); }

/// A^eps(|xi|) = int b^eps min(|xi|^2 sin^2(theta/2), 1) d sigma.
double symbol_A(double xi, const KernelConfig& cfg);

/// Kinetic factor |u|^gamma with the small-|u| regularization for gamma < 0.
inline double kinetic_factor(double u, double gamma, double delta) {
  if (gamma == 0.0) return 1.0;
  if (gamma < 0.0 && u < delta) u = delta;
  return std::pow(u, gamma);
}

}  // namespace boltzgap
