#include <gtest/gtest.h>

#include <cmath>

#include "boltzgap/fit.hpp"

using namespace boltzgap;

TEST(Fit, LinearExact) {
  const std::vector<double> x{0, 1, 2, 3, 4};
  std::vector<double> y;
  for (double v : x) y.push_back(2.5 - 0.75 * v);
  const LinearFit f = linear_fit(x, y);
  EXPECT_NEAR(f.slope, -0.75, 1e-14);
  EXPECT_NEAR(f.intercept, 2.5, 1e-14);
  EXPECT_NEAR(f.r2, 1.0, 1e-14);
}

TEST(Fit, LinearRejectsBadInput) {
  EXPECT_THROW(linear_fit({1.0}, {2.0}), std::invalid_argument);
  EXPECT_THROW(linear_fit({1, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST(Fit, PowerLawUsesMagnitudes) {
  std::vector<double> x, y;
  for (int k = 3; k <= 7; ++k) {
    x.push_back(std::ldexp(1.0, -k));
    y.push_back(-3.0 * std::pow(x.back(), 1.5));
  }
  const LinearFit f = power_law_fit(x, y);
  EXPECT_NEAR(f.slope, 1.5, 1e-12);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-11);
}

TEST(Fit, PowerDifferenceRecoversExponent) {
  const double xr = 1.0 / 512.0;
  for (double p : {0.5, 1.0, 1.5}) {
    std::vector<double> x, y;
    for (int k = 3; k <= 6; ++k) {
      x.push_back(std::ldexp(1.0, -k));
      y.push_back(0.7 * (std::pow(x.back(), p) - std::pow(xr, p)));
    }
    const PowerDifferenceFit f = power_difference_fit(x, y, xr);
    EXPECT_NEAR(f.exponent, p, 1e-6) << p;
    EXPECT_NEAR(f.C, 0.7, 1e-5) << p;
    EXPECT_NEAR(f.r2, 1.0, 1e-9);
  }
  EXPECT_THROW(power_difference_fit({0.1, 0.2}, {1.0, 2.0}, 0.15), std::invalid_argument);
}

TEST(Fit, TwoSegmentFindsHinge) {
  std::vector<double> t, y;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(0.1 * i);
    y.push_back(t.back() < 4.0 ? -2.0 * t.back() : -8.0 - 0.5 * (t.back() - 4.0));
  }
  const TwoSegmentFit f = two_segment_fit(t, y);
  ASSERT_TRUE(f.found);
  EXPECT_NEAR(f.breakpoint, 4.0, 1e-6);
  EXPECT_NEAR(f.slope_before, -2.0, 1e-8);
  EXPECT_NEAR(f.slope_after, -0.5, 1e-8);
  EXPECT_LT(f.sse, 1e-12);
}

TEST(Fit, TwoSegmentRejectsStraightLine) {
  std::vector<double> t, y;
  for (int i = 0; i <= 50; ++i) {
    t.push_back(i);
    y.push_back(1.0 - 0.3 * i);
  }
  EXPECT_FALSE(two_segment_fit(t, y).found);
  EXPECT_THROW(two_segment_fit({0, 1, 2}, {0, 1, 2}), std::invalid_argument);
}
