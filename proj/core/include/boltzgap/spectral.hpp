#pragma once

#include <Eigen/Dense>
#include <functional>

#include "boltzgap/grid.hpp"
#include "boltzgap/radial.hpp"
#include "boltzgap/spherical.hpp"

namespace boltzgap {

/// f(v) = sum_lm F_lm(|v|) Y_l^m(v/|v|) with every profile F_lm expanded in
/// the radial B-spline basis. Column lm of `coeffs` holds F_lm.
struct SpectralField {
  RadialPtr radial;
  int l_max = 0;
  Eigen::MatrixXd coeffs;

  static SpectralField zero(RadialPtr radial, int l_max);
  int n_lm() const { return lm_count(l_max); }
  static int degree_of(int lm) { return static_cast<int>(std::sqrt(static_cast<double>(lm))); }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double a);
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  /// Profile values F_lm at the radial quadrature nodes (nodes x lm).
  Eigen::MatrixXd node_values() const;
  double value(const Vec3& v) const;
};

/// Analysis at the radial quadrature nodes with a sphere rule of the given
/// degree (default 2 l_max), followed by per-(l,m) projection on the B-splines.
SpectralField analyze_function(const std::function<double(const Vec3&)>& f, RadialPtr radial, int l_max,
                               int quad_degree = -1);
/// Grid data are read through a spectrally upsampled tricubic sampler.
SpectralField analyze_field(const Field& f, RadialPtr radial, int l_max, int quad_degree = -1, int upsample = 4);
/// Radial function: only the l = 0 profile sqrt(4 pi) f(r) is present.
SpectralField analyze_radial(const std::function<double(double)>& f, RadialPtr radial, int l_max = 0);
/// Projection of node values (nodes x lm) onto the basis.
SpectralField from_node_values(const Eigen::MatrixXd& vals, RadialPtr radial, int l_max);

Field synthesize(const SpectralField& f, const GridPtr& grid);

/// L^2 inner product.
double spectral_inner(const SpectralField& a, const SpectralField& b);
inline double spectral_norm2(const SpectralField& a) { return spectral_inner(a, a); }
/// int w(|v|)^2 |f|^2 dv.
double spectral_weighted_norm2(const SpectralField& a, const std::function<double(double)>& w);
/// w(|v|) f, re-projected.
SpectralField multiply_radial(const SpectralField& a, const std::function<double(double)>& w);

}  // namespace boltzgap
