#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "boltzgap/battery.hpp"
#include "boltzgap/direct.hpp"
#include "boltzgap/norms.hpp"
#include "boltzgap/semigroup.hpp"

using namespace boltzgap;

namespace {

// exp(-T M^{-1} A) c0 by Pade scaling and squaring.
Eigen::VectorXd expm_oracle(const Eigen::MatrixXd& M, const Eigen::MatrixXd& A, const Eigen::VectorXd& c0, double T) {
  const Eigen::MatrixXd K = M.inverse() * A;
  const Eigen::MatrixXd E = (-T * K).exp();
  return E * c0;
}

LinearEvolution random_system(int n, unsigned seed) {
  std::srand(seed);
  const Eigen::MatrixXd B = Eigen::MatrixXd::Random(n, n);
  const Eigen::MatrixXd C = Eigen::MatrixXd::Random(n, n);
  LinearEvolution sys;
  sys.M = B * B.transpose() + n * Eigen::MatrixXd::Identity(n, n);
  sys.A = C * C.transpose();
  return sys;
}

}  // namespace

TEST(Evolve, MatchesMatrixExponentialOnRandomSystem) {
  const LinearEvolution sys = random_system(12, 3);
  const Eigen::VectorXd c0 = Eigen::VectorXd::LinSpaced(12, -1.0, 2.0);
  EvolutionConfig cfg;
  cfg.T = 2.0;
  cfg.dt = 1e-3;  // the automatic step targets stability, not 1e-8 accuracy
  cfg.cadence = 10;
  Eigen::VectorXd cT;
  const DecaySeries s = evolve(sys, c0, cfg, &cT);
  const Eigen::VectorXd ref = expm_oracle(sys.M, sys.A, c0, cfg.T);
  EXPECT_LE((cT - ref).norm(), 1e-8 * c0.norm());
  EXPECT_DOUBLE_EQ(s.times.back(), cfg.T);
  for (std::size_t i = 1; i < s.energy.size(); ++i) EXPECT_LE(s.energy[i], s.energy[i - 1] * (1 + 1e-14));
  EXPECT_NEAR(s.energy.front(), c0.dot(sys.M * c0), 1e-12 * s.energy.front());
}

TEST(Evolve, FourthOrderInTheStep) {
  const LinearEvolution sys = random_system(8, 5);
  const Eigen::VectorXd c0 = Eigen::VectorXd::Ones(8);
  const Eigen::VectorXd ref = expm_oracle(sys.M, sys.A, c0, 1.0);
  double prev = 0.0;
  for (double dt : {0.05, 0.025}) {
    EvolutionConfig cfg;
    cfg.T = 1.0;
    cfg.dt = dt;
    cfg.cadence = 1000;
    Eigen::VectorXd cT;
    evolve(sys, c0, cfg, &cT);
    const double err = (cT - ref).norm();
    if (prev > 0.0) {
      EXPECT_NEAR(std::log2(prev / err), 4.0, 0.3);
    }
    prev = err;
  }
}

TEST(Evolve, GrowthRaisesStabilityError) {
  LinearEvolution sys = random_system(6, 9);
  sys.A = -sys.A;
  EvolutionConfig cfg;
  cfg.T = 1.0;
  EXPECT_THROW(evolve(sys, Eigen::VectorXd::Ones(6), cfg), StabilityError);
  cfg.T = -1.0;
  EXPECT_THROW(evolve(sys, Eigen::VectorXd::Ones(6), cfg), std::invalid_argument);
}

// Grid route on a real collision matrix at n = 8.
TEST(GridEvolution, MatchesMatrixExponentialForCollisionOperator) {
  auto G = make_grid(8, 4.0);
  KernelConfig k;
  k.eps = 0.25;
  CollisionWorkspace ws(G, k, 1);
  const Eigen::MatrixXd L = assemble_L_dense(ws);
  // The dense matrix is the operator.
  const Field f = sample(battery()[3], G);
  const Field Lf = L_eps(f, ws);
  const Eigen::VectorXd Lf_dense = L * Eigen::Map<const Eigen::VectorXd>(f.data(), f.size());
  for (std::size_t q = 0; q < f.size(); ++q) EXPECT_NEAR(Lf_dense(q), Lf[q], 1e-11 * (1 + std::abs(Lf[q])));

  const LinearEvolution sys = grid_evolution(L, G, k.eps, {0, 1});
  const Eigen::VectorXd c0 = Eigen::Map<const Eigen::VectorXd>(f.data(), f.size());
  EvolutionConfig cfg;
  cfg.T = 0.5;
  cfg.dt = 1e-3;
  cfg.cadence = 50;
  cfg.abort_growth = 1.0;
  Eigen::VectorXd cT;
  const DecaySeries s = evolve(sys, c0, cfg, &cT);
  const Eigen::VectorXd ref = (-cfg.T * L).exp() * c0;
  EXPECT_LE((cT - ref).norm(), 1e-7 * c0.norm());
  ASSERT_EQ(s.blocks.size(), 2u);
  EXPECT_EQ(s.macro.size(), s.times.size());
  // Low and high parts split the energy only up to the cross term, but both are bounded by it.
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    EXPECT_LE(s.low[i], s.energy[i] * (1 + 1e-12));
    EXPECT_LE(s.high[i], s.energy[i] * (1 + 1e-12));
  }
  EXPECT_THROW(grid_evolution(Eigen::MatrixXd::Zero(3, 3), G, k.eps, {}), std::invalid_argument);
}

TEST(SpectralEvolution, DeflationKeepsInvariantsOut) {
  KernelConfig k;
  k.gamma = -1.0;
  k.eps = 0.25;
  auto rad = std::make_shared<RadialDiscretization>(uniform_breakpoints(10.0, 0.5));
  RotationalOperator T(k, rad, 0);
  const LinearEvolution sys = spectral_evolution(T, 0, k.eps, {1});
  const SpectralField ring = make_ring_datum(rad, 1, 2.0);
  const Eigen::VectorXd c0 = sys.reproject(ring.coeffs.col(0));
  EXPECT_LE((sys.reproject(c0) - c0).norm(), 1e-12 * c0.norm());
  // Mass and energy of the datum vanish.
  SpectralField f = SpectralField::zero(rad, 0);
  f.coeffs.col(0) = c0;
  const MacroCoefficients m0 = macro_coefficients(f);
  EXPECT_NEAR(m0.a, 0.0, 1e-10);
  EXPECT_NEAR(m0.c, 0.0, 1e-10);

  EvolutionConfig cfg;
  cfg.T = 2.0;
  cfg.dt = 1e-3;
  cfg.cadence = 50;
  Eigen::VectorXd cT;
  const DecaySeries s = evolve(sys, c0, cfg, &cT);
  EXPECT_LE((cT - expm_oracle(sys.M, sys.A, c0, cfg.T)).norm(), 1e-8 * c0.norm());
  EXPECT_LE((sys.reproject(cT) - cT).norm(), 1e-10 * c0.norm());
  EXPECT_LT(s.energy.back(), s.energy.front());
  EXPECT_THROW(spectral_evolution(T, 1, k.eps, {}), std::invalid_argument);
}

TEST(RingDatum, NormalizedAndOrthogonalToInvariants) {
  auto G = make_grid(32, 8.0);
  const Field f = make_ring_datum(G, 1, 2.0);
  EXPECT_NEAR(l2_norm(f), 1.0, 1e-12);
  const MacroCoefficients m = macro_coefficients(f);
  // Roundoff of lattice sums over 32^3 nodes.
  EXPECT_NEAR(m.a, 0.0, 1e-10);
  EXPECT_NEAR(m.c, 0.0, 1e-10);
  for (double b : m.b) EXPECT_NEAR(b, 0.0, 1e-10);
  EXPECT_THROW(make_ring_datum(G, 3, 2.0), std::invalid_argument);
  EXPECT_THROW(make_ring_datum(G, 1, 1.0), std::invalid_argument);
}

TEST(Crossover, DetectsSyntheticBreak) {
  // exp(-2t) until t0 = 3, then an algebraic tail continuing the value.
  std::vector<double> t, e;
  for (int i = 0; i <= 200; ++i) {
    const double x = 0.05 * i;
    t.push_back(x);
    e.push_back(x <= 3.0 ? std::exp(-2.0 * x) : std::exp(-6.0) * std::pow(1.0 + 0.1 * (x - 3.0), -2.0));
  }
  const auto ts = detect_crossover(t, e);
  ASSERT_TRUE(ts.has_value());
  EXPECT_NEAR(*ts, 3.0, 0.3);

  std::vector<double> pure;
  for (double x : t) pure.push_back(std::exp(-2.0 * x));
  EXPECT_FALSE(detect_crossover(t, pure).has_value());
  EXPECT_FALSE(detect_crossover({0, 1, 2}, {1, 0.5, 0.25}).has_value());
}

TEST(Retention, ConstantBlockHasZeroFit) {
  DecaySeries s;
  s.block_ids = {7};
  s.blocks.resize(1);
  for (int i = 0; i <= 10; ++i) {
    s.times.push_back(1e-4 * i);
    s.energy.push_back(1.0);
    s.blocks[0].push_back(0.9);
  }
  const RetentionReport r = retention_check(s, 0, 0.0625, 0.5, -1.0, 7, 0.01);
  EXPECT_DOUBLE_EQ(r.C_fit, 0.0);
  EXPECT_DOUBLE_EQ(r.min_block, 0.9);
  EXPECT_NEAR(r.bound, 0.96, 1e-15);
  EXPECT_FALSE(r.holds);  // 0.9 < 1 - 4 eta
  const RetentionReport r2 = retention_check(s, 0, 0.0625, 0.5, -1.0, 7, 0.03);
  EXPECT_TRUE(r2.holds);
}

TEST(Envelope, RecoversExponentialRate) {
  DecaySeries s;
  for (int i = 0; i <= 20; ++i) {
    s.times.push_back(0.1 * i);
    s.energy.push_back(std::exp(-3.0 * 0.1 * i));
  }
  const ExponentialFit f = exponential_envelope(s, 2.0);
  EXPECT_NEAR(f.c, 3.0, 1e-12);
  EXPECT_NEAR(f.A, 1.0, 1e-12);
  EXPECT_TRUE(f.holds);
}
