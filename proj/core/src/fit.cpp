#include "boltzgap/fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace boltzgap {

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear_fit needs >= 2 paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissae");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

LinearFit power_law_fit(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || y[i] == 0.0) throw std::invalid_argument("power_law_fit needs x > 0 and y != 0");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(std::abs(y[i]));
  }
  return linear_fit(lx, ly);
}

namespace {
struct HingeResult {
  double sse;
  Eigen::Vector3d coef;
};

HingeResult hinge_fit(const std::vector<double>& t, const std::vector<double>& y, double tau) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = t[i];
    A(i, 2) = std::max(0.0, t[i] - tau);
    b(i) = y[i];
  }
  Eigen::Vector3d c = A.colPivHouseholderQr().solve(b);
  return {(A * c - b).squaredNorm(), c};
}
}  // namespace

TwoSegmentFit two_segment_fit(const std::vector<double>& t, const std::vector<double>& y, double min_slope_change,
                              double edge_fraction) {
  if (t.size() != y.size() || t.size() < 6) throw std::invalid_argument("two_segment_fit needs >= 6 samples");
  TwoSegmentFit out;
  const LinearFit single = linear_fit(t, y);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = y[i] - single.intercept - single.slope * t[i];
    out.sse_single += r * r;
  }
  const double t0 = t.front(), t1 = t.back();
  const double lo = t0 + edge_fraction * (t1 - t0), hi = t1 - edge_fraction * (t1 - t0);

  constexpr int kScan = 96;
  double best_tau = lo, best = hinge_fit(t, y, lo).sse;
  for (int k = 1; k <= kScan; ++k) {
    const double tau = lo + (hi - lo) * k / kScan;
    const double v = hinge_fit(t, y, tau).sse;
    if (v < best) {
      best = v;
      best_tau = tau;
    }
  }
  const double step = (hi - lo) / kScan;
  double a = std::max(lo, best_tau - step), b = std::min(hi, best_tau + step);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = hinge_fit(t, y, c).sse, fd = hinge_fit(t, y, d).sse;
  for (int it = 0; it < 80 && b - a > 1e-10 * (1.0 + std::abs(b)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = hinge_fit(t, y, c).sse;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = hinge_fit(t, y, d).sse;
    }
  }
  double tau = 0.5 * (a + b);
  HingeResult h = hinge_fit(t, y, tau);
  if (best < h.sse) {
    tau = best_tau;
    h = hinge_fit(t, y, tau);
  }
  out.breakpoint = tau;
  out.sse = h.sse;
  out.slope_before = h.coef(1);
  out.slope_after = h.coef(1) + h.coef(2);
  const double scale = std::max(std::abs(out.slope_before), std::abs(out.slope_after));
  const bool slopes_differ = scale > 0.0 && std::abs(out.slope_after - out.slope_before) > min_slope_change * scale;
  const bool improves = out.sse < 0.5 * out.sse_single;
  out.found = slopes_differ && improves;
  return out;
}

namespace {
struct PdEval {
  double sse, logC, sst;
};

PdEval power_difference_sse(const std::vector<double>& x, const std::vector<double>& ly, double x_ref, double p) {
  std::vector<double> lb(x.size());
  double mean = 0.0, ymean = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lb[i] = std::log(std::pow(x[i], p) - std::pow(x_ref, p));
    mean += ly[i] - lb[i];
    ymean += ly[i];
  }
  mean /= static_cast<double>(x.size());
  ymean /= static_cast<double>(x.size());
  PdEval e{0.0, mean, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = ly[i] - mean - lb[i];
    e.sse += r * r;
    e.sst += (ly[i] - ymean) * (ly[i] - ymean);
  }
  return e;
}
}  // namespace

PowerDifferenceFit power_difference_fit(const std::vector<double>& x, const std::vector<double>& y, double x_ref,
                                        double p_lo, double p_hi) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("power_difference_fit needs >= 2 samples");
  std::vector<double> ly(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(x[i] > x_ref) || y[i] == 0.0) throw std::invalid_argument("need x > x_ref and y != 0");
    ly[i] = std::log(std::abs(y[i]));
  }
  constexpr int kScan = 200;
  double best_p = p_lo, best = power_difference_sse(x, ly, x_ref, p_lo).sse;
  for (int k = 1; k <= kScan; ++k) {
    const double p = p_lo + (p_hi - p_lo) * k / kScan;
    const double v = power_difference_sse(x, ly, x_ref, p).sse;
    if (v < best) {
      best = v;
      best_p = p;
    }
  }
  const double step = (p_hi - p_lo) / kScan;
  double a = std::max(p_lo, best_p - step), b = std::min(p_hi, best_p + step);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 100 && b - a > 1e-12; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (power_difference_sse(x, ly, x_ref, c).sse < power_difference_sse(x, ly, x_ref, d).sse)
      b = d;
    else
      a = c;
  }
  PowerDifferenceFit out;
  out.exponent = 0.5 * (a + b);
  const PdEval e = power_difference_sse(x, ly, x_ref, out.exponent);
  out.C = std::exp(e.logC);
  out.r2 = e.sst > 0.0 ? 1.0 - e.sse / e.sst : 1.0;
  return out;
}

}  // namespace boltzgap
