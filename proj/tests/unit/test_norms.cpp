#include <gtest/gtest.h>

#include <cmath>

#include "boltzgap/kernel.hpp"
#include "boltzgap/norms.hpp"
#include "boltzgap/spherical.hpp"
#include "oracles.hpp"

using namespace boltzgap;

namespace {
const double kSqrtPi3 = std::pow(oracle::kPi(), 1.5);
GridPtr grid32() { return make_grid(32, 8.0); }
double gauss(const Vec3& v) { return std::exp(-0.5 * dot3(v, v)); }
}  // namespace

// int e^{-|v|^2} <v>^{2l} for l = 0, 1 in closed form.
TEST(Norms, WeightedL2OfGaussian) {
  const Field f = Field::from_function(grid32(), gauss);
  EXPECT_NEAR(std::pow(weighted_L2(f, 0.0), 2), kSqrtPi3, 1e-10);
  EXPECT_NEAR(std::pow(weighted_L2(f, 1.0), 2), kSqrtPi3 * 2.5, 1e-10);
}

// Parseval with the transform (2 pi)^{3/2} e^{-|xi|^2/2} of e^{-|v|^2/2}: |W(D) f|^2 =
// (2 pi)^{-3} int W(xi)^2 (2 pi)^3 e^{-|xi|^2} d xi = 4 pi int W^2 e^{-r^2} r^2 dr.
TEST(Norms, FourierMultiplierMatchesParseval) {
  const Field f = Field::from_function(grid32(), gauss);
  // The dual spacing pi/8 resolves the cutoff transition only for eps <~ 1/8.
  for (double eps : {0.125, 0.0625}) {
    const double s = 0.5;
    const Field g = multiplier_WepsD(f, eps, s);
    const double ref = 4.0 * oracle::kPi() *
                       oracle::simpson([&](double r) { return std::pow(weight_Weps(r, eps, s), 2) * std::exp(-r * r) * r * r; },
                                       0.0, 12.0, 1e-14);
    EXPECT_NEAR(inner(g, g) / ref, 1.0, 1e-8) << eps;
  }
}

TEST(Norms, SphericalMultiplierScalesByDegree) {
  auto st = SphericalTransform::for_grid(*grid32(), 4, 24);
  const Eigen::MatrixXd c = st.analyze([](const Vec3& v) { return (1.0 + v[2] + v[0] * v[1]) * std::exp(-dot3(v, v)); });
  const double eps = 0.1, s = 0.5;
  const Eigen::MatrixXd m = spherical_multiplier_coeffs(c, 4, eps, s);
  for (int l = 0; l <= 4; ++l)
    for (int mm = -l; mm <= l; ++mm) {
      const int k = lm_index(l, mm);
      const double w = weight_Weps(std::sqrt(l * (l + 1.0)), eps, s);
      EXPECT_LE((m.col(k) - w * c.col(k)).norm(), 1e-14 * (1 + c.col(k).norm()));
    }
  // Degree-1 profile of v_z e^{-r^2}: r e^{-r^2} sqrt(4 pi / 3).
  for (std::size_t k = 0; k < st.shells().size(); ++k) {
    const double r = st.shells()[k];
    EXPECT_NEAR(c(k, lm_index(1, 0)), r * std::exp(-r * r) * std::sqrt(4 * oracle::kPi() / 3), 1e-13);
    EXPECT_NEAR(c(k, lm_index(2, 1)), 0.0, 1e-13);
  }
}

TEST(Norms, HarmonicsOrthonormalUnderSphereRule) {
  SphereRule rule(8, 4);
  const Eigen::MatrixXd G = rule.Y.transpose() * Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(
                                                      rule.weights.data(), rule.weights.size())).asDiagonal() * rule.Y;
  EXPECT_LE((G - Eigen::MatrixXd::Identity(G.rows(), G.cols())).norm(), 1e-12);
}

TEST(Norms, TripleNormAddsItsTerms) {
  const auto g = grid32();
  auto st = SphericalTransform::for_grid(*g, 8, 32);
  const Field f = Field::from_function(g, [](const Vec3& v) { return (1 + v[0]) * std::exp(-dot3(v, v) / 2); });
  const TripleNormReport r = triple_norm(f, 0.125, 0.5, 0.0, st);
  EXPECT_NEAR(r.total, r.weight_term + r.fourier_term + r.spherical_term, 1e-14 * r.total);
  EXPECT_GT(r.weight_term, 0.0);
  EXPECT_GT(r.fourier_term, 0.0);
  EXPECT_GT(r.spherical_term, 0.0);
  EXPECT_LT(r.tail, 1e-6);
}

// (a + b.v + c|v|^2) sqrt(mu) has exactly those macro coefficients; the
// lattice [-8, 8 - h] truncates |v|^4 mu at the 1e-11 level.
TEST(Macro, RoundTripOnGrid) {
  const auto g = grid32();
  MacroCoefficients m;
  m.a = 0.3;
  m.b = {-0.2, 0.5, 0.1};
  m.c = -0.7;
  const MacroCoefficients r = macro_coefficients(macro_field(m, g));
  EXPECT_NEAR(r.a, m.a, 1e-10);
  EXPECT_NEAR(r.c, m.c, 1e-10);
  for (int d = 0; d < 3; ++d) EXPECT_NEAR(r.b[d], m.b[d], 1e-10);
  const Field f = Field::from_function(g, [](const Vec3& v) { return std::exp(-dot3(v, v) / 3 + 0.2 * v[1]); });
  const Field p = project_out_N(f);
  const MacroCoefficients z = macro_coefficients(p);
  EXPECT_NEAR(z.a, 0.0, 1e-10);
  EXPECT_NEAR(z.c, 0.0, 1e-10);
  for (int d = 0; d < 3; ++d) EXPECT_NEAR(z.b[d], 0.0, 1e-10);
  // The literal constant 2 leaves a nonzero residue on the Maxwellian.
  const MacroCoefficients lit = macro_coefficients(macro_field(m, g), ProjectionVariant::ConstantTwo);
  EXPECT_NEAR(lit.a, 0.5 * m.a - 1.5 * m.c, 1e-10);
}

TEST(Macro, SpectralAgreesWithGrid) {
  auto rad = std::make_shared<RadialDiscretization>(uniform_breakpoints(10.0, 0.25));
  auto fn = [](const Vec3& v) { return (1.0 + 0.5 * v[0] - v[2]) * std::exp(-0.4 * dot3(v, v)); };
  const MacroCoefficients a = macro_coefficients(analyze_function(fn, rad, 2));
  const MacroCoefficients b = macro_coefficients(Field::from_function(grid32(), fn));
  EXPECT_NEAR(a.a, b.a, 1e-8);
  EXPECT_NEAR(a.c, b.c, 1e-8);
  for (int d = 0; d < 3; ++d) EXPECT_NEAR(a.b[d], b.b[d], 1e-8);
  const MacroCoefficients z = macro_coefficients(project_out_N(analyze_function(fn, rad, 2)));
  EXPECT_NEAR(z.a, 0.0, 1e-8);
  EXPECT_NEAR(z.b[2], 0.0, 1e-8);
}
