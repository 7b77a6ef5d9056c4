#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "boltzgap/battery.hpp"
#include "boltzgap/bobylev.hpp"
#include "boltzgap/direct.hpp"
#include "boltzgap/norms.hpp"
#include "boltzgap/rotational.hpp"
#include "oracles.hpp"

using namespace boltzgap;

namespace {

double max_abs(const Field& f) {
  double m = 0.0;
  for (double x : f.values()) m = std::max(m, std::abs(x));
  return m;
}

RadialPtr uniform_radial(double r_max, double dr) {
  return std::make_shared<RadialDiscretization>(uniform_breakpoints(r_max, dr));
}

}  // namespace

TEST(PostCollision, ConservesMomentumAndEnergy) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 2.0);
  for (int t = 0; t < 200; ++t) {
    const Vec3 v{g(rng), g(rng), g(rng)}, vs{g(rng), g(rng), g(rng)};
    Vec3 sig{g(rng), g(rng), g(rng)};
    const double n = norm3(sig);
    for (double& x : sig) x /= n;
    Vec3 vp, vps;
    post_collision(v, vs, sig, vp, vps);
    for (int d = 0; d < 3; ++d) EXPECT_NEAR(vp[d] + vps[d], v[d] + vs[d], 1e-12);
    EXPECT_NEAR(dot3(vp, vp) + dot3(vps, vps), dot3(v, v) + dot3(vs, vs), 1e-12 * (1 + dot3(v, v) + dot3(vs, vs)));
  }
}

TEST(CompleteFrame, IsOrthonormal) {
  for (const Vec3& a : {Vec3{0, 0, 1}, Vec3{1, 0, 0}, Vec3{0.6, -0.8, 0}, Vec3{0.48, 0.6, 0.64}}) {
    Vec3 e1, e2;
    complete_frame(a, e1, e2);
    EXPECT_NEAR(dot3(e1, e1), 1.0, 1e-14);
    EXPECT_NEAR(dot3(e2, e2), 1.0, 1e-14);
    EXPECT_NEAR(dot3(e1, a), 0.0, 1e-14);
    EXPECT_NEAR(dot3(e2, a), 0.0, 1e-14);
    EXPECT_NEAR(dot3(e1, e2), 0.0, 1e-14);
  }
}

// Same angular nodes, naive loops: the two sums must agree to rounding.
TEST(DirectQ, MatchesBruteForceOracleOnTinyGrid) {
  auto G = make_grid(8, 4.0);
  KernelConfig cfg;
  cfg.gamma = -1.0;
  cfg.eps = 0.25;
  CollisionWorkspace ws(G, cfg, 1, 1);
  auto g = Field::from_function(G, [](const Vec3& v) { return std::exp(-dot3(v, v) / 2 + 0.3 * v[0]); });
  auto h = Field::from_function(G, [](const Vec3& v) {
    const Vec3 d{v[0] - 0.5, v[1] + 0.25, v[2] - 1.0};
    return std::exp(-dot3(d, d));
  });
  const Field q = Q_eps(g, h, ws);
  const Field ref = oracle::brute_force_Q(g, h, cfg);
  const double scale = max_abs(ref);
  ASSERT_GT(scale, 0.0);
  double err = 0.0;
  for (std::size_t p = 0; p < q.size(); ++p) err = std::max(err, std::abs(q[p] - ref[p]));
  EXPECT_LE(err / scale, 1e-8);
}

TEST(DirectGamma, FloorZeroesFarNodes) {
  auto G = make_grid(8, 8.0);
  KernelConfig cfg;
  cfg.eps = 0.5;
  CollisionWorkspace ws(G, cfg, 1, 1);
  auto f = Field::from_function(G, [](const Vec3& v) { return std::exp(-dot3(v, v) / 4); });
  const Field out = Gamma_eps(f, f, ws);
  // Corner node: |v| = 8 sqrt(3), sqrt(mu) ~ 1e-21.
  EXPECT_EQ(out[G->index(0, 0, 0)], 0.0);
  for (double x : out.values()) EXPECT_TRUE(std::isfinite(x));
}

TEST(DirectWorkspace, LambdaIsTotalB) {
  KernelConfig cfg;
  cfg.eps = 0.125;
  CollisionWorkspace ws(make_grid(8, 4.0), cfg, 1, 1);
  EXPECT_NEAR(ws.lambda(), oracle::total_b(cfg.s, cfg.eps), 1e-4 * ws.lambda());
  EXPECT_THROW(Q_eps(Field(make_grid(10, 4.0)), Field(make_grid(10, 4.0)), ws), std::invalid_argument);
}

class EngineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    cfg_ = new KernelConfig;
    cfg_->gamma = 0.0;
    cfg_->eps = 0.125;
    radial_ = new RadialPtr(uniform_radial(10.0, 0.25));
    full_ = new RotationalOperator(*cfg_, *radial_, 2);
    loss_ = new RotationalOperator(*cfg_, *radial_, 2, Integrand::Linearized, Part::Loss);
  }
  static void TearDownTestSuite() {
    delete full_;
    delete loss_;
    delete radial_;
    delete cfg_;
  }
  static KernelConfig* cfg_;
  static RadialPtr* radial_;
  static RotationalOperator* full_;
  static RotationalOperator* loss_;
};
KernelConfig* EngineTest::cfg_ = nullptr;
RadialPtr* EngineTest::radial_ = nullptr;
RotationalOperator* EngineTest::full_ = nullptr;
RotationalOperator* EngineTest::loss_ = nullptr;

TEST_F(EngineTest, AnnihilatesNullSpace) {
  const std::vector<std::function<double(const Vec3&)>> elems{
      [](const Vec3& v) { return sqrt_maxwellian_value(v); },
      [](const Vec3& v) { return v[0] * sqrt_maxwellian_value(v); },
      [](const Vec3& v) { return v[1] * sqrt_maxwellian_value(v); },
      [](const Vec3& v) { return v[2] * sqrt_maxwellian_value(v); },
      [](const Vec3& v) { return dot3(v, v) * sqrt_maxwellian_value(v); }};
  for (const auto& e : elems) {
    const SpectralField f = analyze_function(e, *radial_, 2);
    const double res = full_->apply_nodes(f).norm();
    const double scale = loss_->apply_nodes(f).norm();
    ASSERT_GT(scale, 0.0);
    EXPECT_LE(res / scale, 1e-3);
  }
}

TEST_F(EngineTest, GalerkinMatricesNearlySymmetric) {
  for (int l = 0; l <= 2; ++l) EXPECT_LE(full_->asymmetry(l), 1e-2) << "l = " << l;
}

TEST_F(EngineTest, QuadraticFormNonnegativeOnBattery) {
  for (const auto& b : battery()) {
    const SpectralField f = analyze_function(b.fn, *radial_, 2);
    // Null-space members sit at zero up to the discretization error of the
    // gain/loss cancellation.
    EXPECT_GE(full_->quadratic_form(f), -1e-5 * loss_->quadratic_form(f)) << b.id;
  }
}

// Pointwise comparison with the literal definition of L evaluated by an
// independent cube quadrature.
TEST_F(EngineTest, MatchesLiteralDefinitionPointwise) {
  auto fn = [](const Vec3& v) { return (1.0 + v[0] - 0.5 * v[2] * v[2]) * std::exp(-0.3 * dot3(v, v)); };
  const SpectralField f = analyze_function(fn, *radial_, 2);
  const SpectralField Lf = full_->apply(f);
  // Scale: collision frequency times f.
  const double nu = full_->collision_frequency().front();
  for (const Vec3& v : {Vec3{0.4, -0.3, 0.7}, Vec3{-1.1, 0.5, 0.2}}) {
    const double ref = oracle::literal_L_at(fn, v, *cfg_, 0.3, 6.3);
    const double got = Lf.value(v);
    EXPECT_NEAR(got, ref, 2e-3 * nu * std::abs(fn(v)) + 1e-6) << v[0] << "," << v[1] << "," << v[2];
  }
}

TEST_F(EngineTest, CommutatorVanishesForConstantLocalizer) {
  const SpectralField f = analyze_function(battery()[3].fn, *radial_, 2);
  const double q = full_->bilinear_raw(f, f);
  EXPECT_LE(std::abs(commutator_pairing(f, Localizer::Low, 1e4, *full_)), 1e-10 * std::abs(q));
}

TEST_F(EngineTest, CommutatorIsQuadratic) {
  const SpectralField f = analyze_function(battery()[4].fn, *radial_, 2);
  const double c1 = commutator_pairing(f, Localizer::Low, 2.0, *full_);
  const double c2 = commutator_pairing(2.0 * f, Localizer::Low, 2.0, *full_);
  ASSERT_NE(c1, 0.0);
  EXPECT_NEAR(c2 / c1, 4.0, 4e-12);
  EXPECT_THROW(commutator_pairing(f, Localizer::Low, 0.0, *full_), std::invalid_argument);
}

TEST(Bobylev, AgreesWithPhysicalSeminormForSqrtMu) {
  KernelConfig cfg;
  cfg.eps = 0.125;
  auto G = make_grid(32, 8.0);
  auto rad = uniform_radial(8.0, 0.25);
  const auto blocks = seminorm_R_blocks(cfg, rad, 2);
  const auto b = battery()[0];
  const double freq = bobylev_R(sample(b, G), cfg);
  const double phys = seminorm_R(blocks, analyze_function(b.fn, rad, 2));
  EXPECT_NEAR(freq / phys, 1.0, 0.02);
}
