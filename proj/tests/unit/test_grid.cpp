#include <gtest/gtest.h>

#include <cmath>

#include "boltzgap/fourier.hpp"
#include "boltzgap/grid.hpp"
#include "boltzgap/interpolation.hpp"

using namespace boltzgap;

TEST(Grid, NodesAndDualLattice) {
  const auto g = make_grid(8, 4.0);
  EXPECT_DOUBLE_EQ(g->spacing(), 1.0);
  EXPECT_EQ(g->size(), 512u);
  const Vec3 v = g->node(g->index(0, 4, 7));
  EXPECT_DOUBLE_EQ(v[0], -4.0);
  EXPECT_DOUBLE_EQ(v[1], 0.0);
  EXPECT_DOUBLE_EQ(v[2], 3.0);
  EXPECT_EQ(g->mode(3), 3);
  EXPECT_EQ(g->mode(4), -4);
  EXPECT_DOUBLE_EQ(g->dual_spacing(), kPi / 4.0);
  EXPECT_THROW(make_grid(7, 4.0), std::invalid_argument);
}

TEST(Grid, FourierRoundTripAndGaussianTransform) {
  const auto g = make_grid(32, 8.0);
  const Field f = Field::from_function(g, [](const Vec3& v) { return std::exp(-0.5 * dot3(v, v)); });
  FourierTransform ft(g);
  const ComplexField F = ft.forward(f);
  // Continuous transform of exp(-|v|^2/2) is (2 pi)^{3/2} exp(-|xi|^2/2); the
  // sampled transform adds the aliases at xi + 2 pi k / h.
  const double period = 2.0 * kPi / g->spacing();
  double worst = 0.0;
  for (std::size_t m = 0; m < g->size(); ++m) {
    const Vec3 xi = g->dual_node(m);
    double exact = 0.0;
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        for (int c = -1; c <= 1; ++c) {
          const Vec3 x{xi[0] + a * period, xi[1] + b * period, xi[2] + c * period};
          exact += std::pow(2.0 * kPi, 1.5) * std::exp(-0.5 * dot3(x, x));
        }
    worst = std::max(worst, std::abs(F[m] - cplx(exact, 0.0)));
  }
  EXPECT_LT(worst, 1e-10);
  const Field back = real_part(ft.inverse(F));
  for (std::size_t q = 0; q < g->size(); ++q) EXPECT_NEAR(back[q], f[q], 1e-13);
}

TEST(Grid, BumpFunctions) {
  EXPECT_DOUBLE_EQ(bump_phi(0.0), 1.0);
  EXPECT_DOUBLE_EQ(bump_phi(0.75), 1.0);
  EXPECT_DOUBLE_EQ(bump_phi(4.0 / 3.0), 0.0);
  EXPECT_DOUBLE_EQ(bump_psi(0.7), 0.0);
  EXPECT_DOUBLE_EQ(bump_psi(2.7), 0.0);
  for (double r = 0.0; r < 2.0; r += 0.01) {
    EXPECT_GE(bump_phi(r), 0.0);
    EXPECT_LE(bump_phi(r), 1.0);
    EXPECT_GE(bump_phi(r), bump_phi(r + 0.01));
  }
  // Dyadic partition of unity.
  for (double r : {0.0, 0.5, 1.0, 3.3, 17.0, 100.0}) {
    double sum = 0.0;
    for (int j = -1; j < 12; ++j) sum += dyadic_weight(r, j);
    EXPECT_NEAR(sum, 1.0, 1e-14) << r;
  }
}

TEST(Grid, SplitsAddUp) {
  const auto g = make_grid(16, 8.0);
  const Field f = Field::from_function(g, [](const Vec3& v) { return std::exp(-0.3 * dot3(v, v)) * (1.0 + v[0]); });
  for (double eps : {0.5, 0.25}) {
    const Split a = phase_split(f, eps), b = freq_split(f, eps);
    for (std::size_t q = 0; q < f.size(); ++q) {
      EXPECT_NEAR(a.low[q] + a.high[q], f[q], 1e-14);
      EXPECT_NEAR(b.low[q] + b.high[q], f[q], 1e-12);
    }
  }
  Field sum(g);
  for (int j = -1; j < 6; ++j) sum += dyadic_block(f, j);
  for (std::size_t q = 0; q < f.size(); ++q) EXPECT_NEAR(sum[q], f[q], 1e-14);
}

TEST(Grid, Localizers) {
  EXPECT_DOUBLE_EQ(localizer(Localizer::Low, 1.0, 10.0), 1.0);
  EXPECT_DOUBLE_EQ(localizer(Localizer::High, 1.0, 10.0), 0.0);
  EXPECT_DOUBLE_EQ(localizer(Localizer::Ring, 20.0, 10.0), bump_psi(2.0));
  EXPECT_THROW(localizer(Localizer::Low, 1.0, 0.0), std::invalid_argument);
}

TEST(Grid, PairwiseSumAndInnerProduct) {
  std::vector<double> x(1000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 1.0 / static_cast<double>(i + 1);
  double naive = 0.0;
  for (double v : x) naive += v;
  EXPECT_NEAR(pairwise_sum(x), naive, 1e-12);
  // h = 1/2: the trapezoid error of the Gaussian moments is ~exp(-2 pi^2 / h^2).
  const auto g = make_grid(32, 8.0);
  const Field mu = maxwellian(g).first;
  // Discrete mass of the Maxwellian.
  double mass = 0.0;
  for (std::size_t q = 0; q < mu.size(); ++q) mass += mu[q];
  EXPECT_NEAR(mass * g->cell_volume(), 1.0, 1e-10);
  EXPECT_NEAR(l2_norm(maxwellian(g).second), 1.0, 1e-10);
}

TEST(Interpolation, ReproducesPolynomials) {
  const auto g = make_grid(16, 4.0);
  const Field lin = Field::from_function(g, [](const Vec3& v) { return 1.0 + 2.0 * v[0] - v[1] + 0.5 * v[2]; });
  const Field cub = Field::from_function(g, [](const Vec3& v) { return v[0] * v[0] * v[0] - v[1] * v[2] * v[2]; });
  const GridInterpolator I1(lin, 1), I3(cub, 3);
  const Vec3 x{0.37, -1.21, 2.05};
  EXPECT_NEAR(I1(x), 1.0 + 2.0 * x[0] - x[1] + 0.5 * x[2], 1e-12);
  EXPECT_NEAR(I3(x), x[0] * x[0] * x[0] - x[1] * x[2] * x[2], 1e-11);
  EXPECT_DOUBLE_EQ(I3(Vec3{10.0, 0.0, 0.0}), 0.0);
  std::size_t idx[64];
  double w[64];
  const int n = I3.stencil(x, idx, w);
  double s = 0.0;
  for (int t = 0; t < n; ++t) s += w[t] * cub[idx[t]];
  EXPECT_NEAR(s, I3(x), 1e-12);
}
