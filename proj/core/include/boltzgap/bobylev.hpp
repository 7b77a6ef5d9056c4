#pragma once

#include "boltzgap/direct.hpp"
#include "boltzgap/grid.hpp"
#include "boltzgap/kernel.hpp"

namespace boltzgap {

struct BobylevOptions {
  /// Frequencies |xi| beyond this are dropped; 0 picks the radius where
  /// |f^|^2 falls below `spectrum_floor` of its peak, enlarged by sqrt 2.
  double xi_cutoff = 0.0;
  double spectrum_floor = 1e-16;
  unsigned threads = 0;
};

/// R^{eps,0}_mu(f) in frequency variables:
///   (2 pi)^{-3} int b^eps(xi_hat . sigma) ( |f^(xi) - f^(xi+)|^2
///       + 2 Re((1 - mu^(xi-)) f^(xi+) conj f^(xi)) ) d xi d sigma,
/// with xi+- = (xi +- |xi| sigma)/2 and mu^(xi) = exp(-|xi|^2/2).
/// The transform is taken on a grid padded to twice the half width, so the
/// dual lattice has spacing pi/(2L); f^(xi+) is read by tricubic interpolation.
double bobylev_R(const Field& f, const KernelConfig& cfg, const BobylevOptions& opt = {});

}  // namespace boltzgap
