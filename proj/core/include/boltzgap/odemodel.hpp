#pragma once

#include <optional>
#include <vector>

namespace boltzgap {

/// f(x) = 1 + 2x - sqrt(1 + 4x), evaluated as 4x^2 / ((1 + 2x) + sqrt(1 + 4x)).
double f_gap(double x);

struct OdeSeries {
  double eps = 0.0;
  double s = 0.0;
  std::vector<double> t;
  std::vector<double> X;
  /// Time of the record placed exactly on X = 1/4, when it was resolved.
  std::optional<double> crossing;
};

/// RK4 for X' = -f_gap(X), X(0) = eps^{-2s}. With resolve_crossing the step
/// that passes X = 1/4 is split so that the crossing is itself a record.
OdeSeries integrate_special(double eps, double s, double T, double dt, bool resolve_crossing = true);

/// Time where X first reaches 1/4 (linear interpolation between records).
/// Throws std::runtime_error when the series never crosses.
double critical_time(const OdeSeries& series);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
};
/// [(-2s ln eps + ln 4)/6, 4(-2s ln eps + ln 4)]: X decays from eps^{-2s} to 1/4
/// at a rate between 1/4 and 6.
Bracket critical_time_bracket(double eps, double s);
/// The same expression with -ln 4 in place of +ln 4 (reported for comparison).
Bracket critical_time_bracket_minus(double eps, double s);

struct SandwichReport {
  std::size_t records = 0;
  std::size_t exp_violations = 0;
  std::size_t poly_violations = 0;
  std::size_t combined_violations = 0;
  double t_star = 0.0;
};

/// Checks the pre-t* exponential sandwich, the post-t* algebraic sandwich
/// and the combined bound for Y = eps^{2s} X at every record. Comparisons
/// allow a relative rounding slack `rel_tol`.
SandwichReport check_sandwich(const OdeSeries& series, double t_star, double rel_tol = 1e-12);

enum class SplitPolicy { Balance, AllLow, AllHigh };

struct OdeParams {
  double c1 = 1.0;
  double c2 = 1.0;
  double p = 1.0;
  double eps = 0.1;
  double s = 0.5;
};

struct OdeState {
  double Y = 0.0;
  double Y1 = 0.0;
  double Y2 = 0.0;
  OdeParams params;
  SplitPolicy policy = SplitPolicy::Balance;
};

/// Splits Y into (Y1, Y2) according to the policy.
OdeState make_state(double Y, const OdeParams& params, SplitPolicy policy);

struct GeneralSeries {
  std::vector<double> t;
  std::vector<double> Y;
  std::vector<double> Y1;
  std::vector<double> Y2;
};

/// RK4 for Y' = -(c1 Y1 + c2 eps^{-2s} Y2^{1+1/p}) with the split re-chosen
/// at every stage.
GeneralSeries integrate_general(const OdeParams& params, SplitPolicy policy, double Y0, double T, double dt);

/// Closed form of the all-high policy: (Y0^{-1/p} + (c2/p) eps^{-2s} t)^{-p}.
double all_high_closed_form(const OdeParams& params, double Y0, double t);

}  // namespace boltzgap
