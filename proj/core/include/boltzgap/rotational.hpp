#pragma once

#include <Eigen/Dense>
#include <vector>

#include "boltzgap/kernel.hpp"
#include "boltzgap/radial.hpp"
#include "boltzgap/spectral.hpp"

namespace boltzgap {

/// Quadrature controls for the collision integral around an output point.
/// The relative velocity u = v - v_* is written in spherical coordinates
/// (|u|, |v_*|, azimuth); the azimuth is exact by symmetry.
struct EngineQuadrature {
  double partner_radius = 10.0;  ///< Maxwellian partners are negligible beyond this radius
  double domain_radius = 0.0;    ///< |v_*| cutoff; 0 selects a default per integrand
  double rho_panel = 1.0;
  int rho_nodes = 5;
  double s_panel = 2.5;
  int s_nodes = 6;
  unsigned threads = 0;  ///< 0: hardware concurrency
};

enum class Integrand {
  /// L f with the Maxwellian weights distributed through mu mu_* = mu' mu'_*.
  Linearized,
  /// Q(mu, f) + Q(f, mu).
  MaxwellCollision,
};

enum class Part { Full, Gain, Loss };

/// Rotation-invariant linear collision operator restricted to the spectral
/// representation. For every degree l it stores the collocation matrix
/// E_l(i, k) = (T B_k Y_l)(r_i) at the radial nodes and the Galerkin matrix
/// A_l = Phi^T diag(w r^2) E_l.
class RotationalOperator {
 public:
  RotationalOperator(const KernelConfig& cfg, RadialPtr radial, int l_max, Integrand kind = Integrand::Linearized,
                     Part part = Part::Full, EngineQuadrature quad = {});

  const KernelConfig& kernel() const { return cfg_; }
  const RadialPtr& radial() const { return radial_; }
  int l_max() const { return l_max_; }
  Integrand integrand() const { return kind_; }

  const Eigen::MatrixXd& collocation(int l) const { return E_.at(l); }
  const Eigen::MatrixXd& stiffness_raw(int l) const { return A_raw_.at(l); }
  /// Symmetric part of the Galerkin matrix.
  const Eigen::MatrixXd& stiffness(int l) const { return A_.at(l); }
  /// Loss frequency int int B mu_* (Linearized) or the partner loss rate at the nodes.
  const std::vector<double>& collision_frequency() const { return nu_; }
  /// || A_raw - A_raw^T ||_F / || A_raw ||_F for degree l.
  double asymmetry(int l) const;

  /// Values of T f at the radial nodes (nodes x lm).
  Eigen::MatrixXd apply_nodes(const SpectralField& f) const;
  /// Galerkin image M^{-1} A_raw f (collocated values projected on the basis).
  SpectralField apply(const SpectralField& f) const;
  /// <T f, g> with the symmetric Galerkin matrices.
  double bilinear(const SpectralField& f, const SpectralField& g) const;
  double quadratic_form(const SpectralField& f) const { return bilinear(f, f); }
  /// <T f, g> with the raw (unsymmetrized) matrices.
  double bilinear_raw(const SpectralField& f, const SpectralField& g) const;

 private:
  void build(const EngineQuadrature& q);
  KernelConfig cfg_;
  RadialPtr radial_;
  int l_max_;
  Integrand kind_;
  Part part_;
  std::vector<Eigen::MatrixXd> E_, A_raw_, A_;
  std::vector<double> nu_;
};

/// <T (chi_M f), chi_M f> - <T f, chi_M^2 f> with the raw Galerkin matrices.
double commutator_pairing(const SpectralField& f, Localizer kind, double M, const RotationalOperator& T);

/// Galerkin matrices of R^{eps,gamma}_mu(f) = int b^eps |u|^gamma mu_* (f' - f)^2
/// per degree l (the same matrix serves every m).
std::vector<Eigen::MatrixXd> seminorm_R_blocks(const KernelConfig& cfg, const RadialPtr& radial, int l_max,
                                               const EngineQuadrature& quad = {});
double seminorm_R(const std::vector<Eigen::MatrixXd>& blocks, const SpectralField& f);

/// Radial weight m(|v_*|) = int int b^eps |u|^gamma (mu'^{1/2} - mu^{1/2})^2 dv d sigma,
/// so that M^{eps,gamma}(f) = int m f^2.
std::vector<double> maxwell_defect_weight(const KernelConfig& cfg, const std::vector<double>& radii,
                                          const EngineQuadrature& quad = {}, int c_nodes = 48);
/// M^{eps,gamma}(f) from the weight sampled at the radial nodes of f.
double seminorm_M(const std::vector<double>& weight_at_nodes, const SpectralField& f);

/// The relative velocity factor used by the engine (delta = 0 means exact).
double engine_kinetic_factor(double u, const KernelConfig& cfg);

}  // namespace boltzgap
