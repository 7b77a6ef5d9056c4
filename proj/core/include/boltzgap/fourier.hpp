#pragma once

#include <functional>

#include "boltzgap/grid.hpp"

namespace boltzgap {

/// Continuous-Fourier-transform approximation on the grid:
///   F(xi_m) = h^3 sum_k f_k exp(-i xi_m . v_k),
///   f_k = (2L)^{-3} sum_m F(xi_m) exp(i xi_m . v_k).
/// Plans are built with FFTW_ESTIMATE so results are reproducible.
class FourierTransform {
 public:
  explicit FourierTransform(GridPtr grid);
  ~FourierTransform();
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

  ComplexField forward(const ComplexField& f) const;
  ComplexField forward(const Field& f) const { return forward(to_complex(f)); }
  ComplexField inverse(const ComplexField& F) const;

  const GridPtr& grid() const { return grid_; }

 private:
  void run(bool forward, cplx* data) const;
  GridPtr grid_;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
  mutable std::vector<cplx> buf_;
};

/// a(D) f for a real radial symbol a(|xi|); the result is real for real f.
Field apply_radial_multiplier(const Field& f, const std::function<double(double)>& symbol);

/// Band-limited refinement: zero-padded spectrum on a grid with factor*n points
/// per axis and the same half width.
Field spectral_upsample(const Field& f, int factor);

}  // namespace boltzgap
