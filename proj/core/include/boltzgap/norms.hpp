#pragma once

#include <utility>

#include "boltzgap/direct.hpp"
#include "boltzgap/grid.hpp"
#include "boltzgap/rotational.hpp"
#include "boltzgap/spectral.hpp"
#include "boltzgap/spherical.hpp"

namespace boltzgap {

/// (sum |f|^2 <v>^{2l} h^3)^{1/2}.
double weighted_L2(const Field& f, double l);

/// W^eps(D) f.
Field multiplier_WepsD(const Field& f, double eps, double s);

/// W^eps((-Delta_S2)^{1/2}) applied to shell coefficients (shells x lm).
Eigen::MatrixXd spherical_multiplier_coeffs(const Eigen::MatrixXd& coeffs, int l_max, double eps, double s);
/// W^eps((-Delta_S2)^{1/2}) f: analysis on shells, degree-wise scaling by
/// W^eps(sqrt(l(l+1))), synthesis back to the grid. `tail` receives the
/// largest per-shell energy fraction in degree l_max (warn above 1%).
Field spherical_multiplier(const Field& f, double eps, double s, const SphericalTransform& st, double* tail = nullptr);

struct TripleNormReport {
  double weight_term = 0.0;     ///< |W^eps W_l f|^2
  double fourier_term = 0.0;    ///< |W^eps(D) W_l f|^2
  double spherical_term = 0.0;  ///< |W^eps((-Delta_S2)^{1/2}) W_l f|^2
  double total = 0.0;
  double tail = 0.0;  ///< spherical truncation diagnostic
};

/// |f|^2_{eps,l} with W_l = <v>^l applied first. The spherical term is
/// evaluated from the shell coefficients (Parseval on each sphere).
TripleNormReport triple_norm(const Field& f, double eps, double s, double l, const SphericalTransform& st);

struct MacroCoefficients {
  double a = 0.0;
  Vec3 b{0.0, 0.0, 0.0};
  double c = 0.0;
};

enum class ProjectionVariant {
  Orthogonal,    ///< a = int (5/2 - |v|^2/2) sqrt(mu) f
  ConstantTwo,  ///< a = int (2 - |v|^2/2) sqrt(mu) f (not idempotent)
};

MacroCoefficients macro_coefficients(const Field& f, ProjectionVariant variant = ProjectionVariant::Orthogonal);
/// (a + b.v + c|v|^2) sqrt(mu) on the grid.
Field macro_field(const MacroCoefficients& m, const GridPtr& grid);
std::pair<MacroCoefficients, Field> project_N(const Field& f,
                                              ProjectionVariant variant = ProjectionVariant::Orthogonal);
/// (I - P) f.
Field project_out_N(const Field& f);

/// The same projection for spectral fields; the moments are read from the
/// l = 0 and l = 1 profiles.
MacroCoefficients macro_coefficients(const SpectralField& f,
                                     ProjectionVariant variant = ProjectionVariant::Orthogonal);
SpectralField macro_field(const MacroCoefficients& m, const RadialPtr& radial, int l_max);
SpectralField project_out_N(const SpectralField& f);

struct EquivalenceTerms {
  double quadratic_form = 0.0;  ///< <L^eps f, f>
  double weighted_l2 = 0.0;     ///< |f|^2_{L^2_{gamma/2}}
  TripleNormReport triple;
  double ratio = 0.0;
};

/// (<L^eps f, f> + |f|^2_{L^2_{gamma/2}}) / |f|^2_{eps,gamma/2}, with the
/// quadratic form from the rotational operator (grid data analyzed on its
/// radial basis up to its degree).
EquivalenceTerms equivalence_ratio(const Field& f, const RotationalOperator& L, const SphericalTransform& st);
/// Same with the direct grid route.
EquivalenceTerms equivalence_ratio(const Field& f, const CollisionWorkspace& ws, const SphericalTransform& st);

}  // namespace boltzgap
