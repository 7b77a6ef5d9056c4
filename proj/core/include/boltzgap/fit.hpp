#pragma once

#include <optional>
#include <vector>

namespace boltzgap {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares y = intercept + slope x.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Fit |y| = C x^slope in log-log coordinates (intercept is ln C).
LinearFit power_law_fit(const std::vector<double>& x, const std::vector<double>& y);

struct TwoSegmentFit {
  bool found = false;
  double breakpoint = 0.0;
  double slope_before = 0.0;
  double slope_after = 0.0;
  double sse = 0.0;
  double sse_single = 0.0;
};

/// Continuous piecewise-linear least squares y = a + b t + c (t - tau)_+ with
/// tau located by a coarse scan followed by golden-section refinement.
/// `found` is false when the two slopes agree to within `min_slope_change`
/// (relative) or the hinge does not reduce the residual.
TwoSegmentFit two_segment_fit(const std::vector<double>& t, const std::vector<double>& y,
                              double min_slope_change = 0.25, double edge_fraction = 0.05);

struct PowerDifferenceFit {
  double exponent = 0.0;
  double C = 0.0;
  double r2 = 0.0;  ///< in log coordinates
};

/// Fit |y| = C (x^p - x_ref^p) for x > x_ref: C by least squares in log
/// coordinates for each p, p by golden section on [p_lo, p_hi].
PowerDifferenceFit power_difference_fit(const std::vector<double>& x, const std::vector<double>& y, double x_ref,
                                        double p_lo = 0.05, double p_hi = 4.0);

}  // namespace boltzgap
