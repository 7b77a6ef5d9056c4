#pragma once

#include "boltzgap/grid.hpp"

namespace boltzgap {

/// Separable Lagrange interpolation of grid samples at arbitrary points.
/// Order 1 is trilinear, order 3 tricubic (4-point stencil per axis).
/// Stencil nodes outside the lattice contribute zero.
class GridInterpolator {
 public:
  GridInterpolator(const Field& f, int order);

  double operator()(const Vec3& x) const;
  int order() const { return order_; }

  /// Stencil of x: up to 64 (index, weight) pairs; returns the count.
  int stencil(const Vec3& x, std::size_t* idx, double* w) const;

 private:
  int axis_weights(double x, int* first, double* w) const;
  const double* data_;
  int n_;
  double L_, inv_h_;
  int order_;
};

/// Field values at arbitrary points through a spectrally upsampled copy
/// followed by tricubic interpolation. Accurate for smooth band-limited data.
class SmoothSampler {
 public:
  SmoothSampler(const Field& f, int upsample);
  double operator()(const Vec3& x) const { return interp_(x); }

 private:
  Field fine_;
  GridInterpolator interp_;
};

}  // namespace boltzgap
