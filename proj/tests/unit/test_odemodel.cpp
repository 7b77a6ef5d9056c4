#include <gtest/gtest.h>

#include <cmath>

#include "boltzgap/experiments.hpp"
#include "boltzgap/odemodel.hpp"
#include "oracles.hpp"

using namespace boltzgap;

TEST(FGap, SeriesForSmallArguments) {
  for (double x : {1e-12, 1e-8, 1e-4, 1e-3}) EXPECT_NEAR(f_gap(x) / oracle::f_gap_series(x), 1.0, 1e-9) << x;
  EXPECT_EQ(f_gap(0.0), 0.0);
  EXPECT_THROW(f_gap(-1e-3), std::domain_error);
}

TEST(FGap, DirectFormulaForLargeArguments) {
  for (double x : {0.25, 1.0, 10.0, 1e4, 1e8}) EXPECT_NEAR(f_gap(x), 1.0 + 2.0 * x - std::sqrt(1.0 + 4.0 * x), 1e-12 * x);
}

TEST(FGap, RandomSampleBounds) {
  const FgapReport r = check_fgap_bounds(20000, 11);
  EXPECT_EQ(r.samples, 20000u);
  EXPECT_GT(r.small_checked, 0u);
  EXPECT_GT(r.large_checked, 0u);
  EXPECT_EQ(r.small_violations, 0u);
  EXPECT_EQ(r.large_violations, 0u);
}

// t* = int_{1/4}^{X0} dX / f(X), written in u = ln X.
TEST(SpecialOde, CriticalTimeMatchesQuadrature) {
  for (double eps : {1e-1, 1e-2}) {
    const double s = 0.5, X0 = std::pow(eps, -2.0 * s);
    const double ref = oracle::simpson([](double u) { return std::exp(u) / f_gap(std::exp(u)); }, std::log(0.25),
                                       std::log(X0), 1e-12);
    const OdeSeries series = integrate_special(eps, s, 1.25 * ref, 1e-3);
    ASSERT_TRUE(series.crossing.has_value());
    EXPECT_NEAR(critical_time(series), ref, 1e-8 * ref) << eps;
    EXPECT_NEAR(*series.crossing, ref, 1e-8 * ref) << eps;
    EXPECT_TRUE(critical_time_bracket(eps, s).contains(ref));
  }
}

TEST(SpecialOde, SandwichHoldsAndMonotone) {
  const OdeSeries series = integrate_special(1e-3, 0.5, 12.0, 1e-3);
  for (std::size_t i = 1; i < series.X.size(); ++i) EXPECT_LT(series.X[i], series.X[i - 1]);
  const double ts = critical_time(series);
  const SandwichReport r = check_sandwich(series, ts);
  EXPECT_EQ(r.records, series.t.size());
  EXPECT_EQ(r.exp_violations, 0u);
  EXPECT_EQ(r.poly_violations, 0u);
  EXPECT_EQ(r.combined_violations, 0u);
}

TEST(SpecialOde, RejectsBadArguments) {
  EXPECT_THROW(integrate_special(0.0, 0.5, 1.0, 1e-3), std::invalid_argument);
  EXPECT_THROW(integrate_special(0.1, 1.0, 1.0, 1e-3), std::invalid_argument);
  EXPECT_THROW(integrate_special(0.1, 0.5, 1.0, 0.0), std::invalid_argument);
  // Too short to cross.
  EXPECT_THROW(critical_time(integrate_special(1e-2, 0.5, 0.1, 1e-3)), std::runtime_error);
}

TEST(Brackets, OrderedAndShifted) {
  const Bracket b = critical_time_bracket(1e-2, 0.5), m = critical_time_bracket_minus(1e-2, 0.5);
  const double L = -std::log(1e-2);
  EXPECT_NEAR(b.lo, (L + std::log(4.0)) / 6.0, 1e-14);
  EXPECT_NEAR(b.hi, 4.0 * (L + std::log(4.0)), 1e-13);
  EXPECT_NEAR(m.lo, (L - std::log(4.0)) / 6.0, 1e-14);
  EXPECT_LT(m.hi, b.hi);
}

TEST(GeneralOde, SplitPoliciesPartitionY) {
  OdeParams p;
  p.eps = 0.05;
  for (double pp : {1.0, 2.0}) {
    p.p = pp;
    const OdeState st = make_state(0.7, p, SplitPolicy::Balance);
    EXPECT_NEAR(st.Y1 + st.Y2, 0.7, 1e-14);
    EXPECT_NEAR(p.c1 * st.Y1, p.c2 * std::pow(p.eps, -2 * p.s) * std::pow(st.Y2, 1 + 1 / pp), 1e-10);
  }
  EXPECT_EQ(make_state(0.7, p, SplitPolicy::AllLow).Y2, 0.0);
  EXPECT_EQ(make_state(0.7, p, SplitPolicy::AllHigh).Y1, 0.0);
  EXPECT_THROW(make_state(-1.0, p, SplitPolicy::Balance), std::domain_error);
}

TEST(GeneralOde, AllHighMatchesClosedForm) {
  OdeParams p;
  p.eps = 0.1;
  p.p = 2.0;
  p.c2 = 0.5;
  const GeneralSeries g = integrate_general(p, SplitPolicy::AllHigh, 1.0, 5.0, 1e-3);
  for (std::size_t i = 0; i < g.t.size(); i += 500)
    EXPECT_NEAR(g.Y[i], all_high_closed_form(p, 1.0, g.t[i]), 1e-9) << g.t[i];
  const GeneralSeries low = integrate_general(p, SplitPolicy::AllLow, 1.0, 2.0, 1e-3);
  EXPECT_NEAR(low.Y.back(), std::exp(-2.0), 1e-10);
  EXPECT_THROW(integrate_general(p, SplitPolicy::AllLow, 1.0, 2.0, 0.0), std::invalid_argument);
}
