#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "boltzgap/fit.hpp"
#include "boltzgap/odemodel.hpp"
#include "boltzgap/rotational.hpp"
#include "boltzgap/semigroup.hpp"

// Experiment drivers shared by the command line tool and the acceptance
// suite. Every driver is deterministic for fixed options.

namespace boltzgap {

/// eps = 2^{-k} for k = k_first..k_last.
std::vector<double> dyadic_eps(int k_first, int k_last);

/// Running min/max of a positive ratio.
struct RatioBand {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  void add(double x);
  double span() const { return hi / lo; }
  bool empty() const { return hi == 0.0; }
};

// ---------------------------------------------------------------- ode

struct OdeExperimentOptions {
  double eps = 1e-2;
  double s = 0.5;
  double dt = 1e-4;
  /// 0: integrate to 1.25 times the upper end of the t* bracket.
  double T = 0.0;
};

struct OdeBounds {
  std::optional<double> lower_exp, upper_exp, lower_poly, upper_poly;
};

struct OdeExperiment {
  OdeExperimentOptions options;
  OdeSeries series;
  double t_star = 0.0;
  Bracket bracket;      ///< (-2s ln eps + ln 4) form
  Bracket bracket_alt;  ///< (-2s ln eps - ln 4) form, informational
  SandwichReport sandwich;
  bool in_bracket = false;
  bool pass() const {
    return in_bracket && sandwich.exp_violations == 0 && sandwich.poly_violations == 0 &&
           sandwich.combined_violations == 0;
  }
};

OdeExperiment run_ode_experiment(const OdeExperimentOptions& opt);
/// Exponential bounds before t*, algebraic bounds after.
OdeBounds ode_bounds(double eps, double s, double t, double t_star);

struct FgapReport {
  std::size_t samples = 0;
  std::size_t small_checked = 0;
  std::size_t large_checked = 0;
  std::size_t small_violations = 0;  ///< x^2 <= f <= 3x^2 for x <= 1/4
  std::size_t large_violations = 0;  ///< x/4 <= f <= 6x for x >= 1/4
};

/// Half the samples log-uniform on [1e-12, 1e6], half uniform on [0, 2].
FgapReport check_fgap_bounds(std::size_t samples, std::uint64_t seed);

// ---------------------------------------------------------------- symbol

struct SymbolOptions {
  std::vector<double> eps_list = dyadic_eps(3, 7);
  double s = 0.5;
  int angular_refine = 1;
  double xi_min = 0.05;
  int points_low = 24;   ///< log-spaced on [xi_min, 2]
  int points_high = 48;  ///< log-spaced on [2, 4/eps]
};

struct SymbolRow {
  double xi = 0.0;
  double eps = 0.0;
  double A = 0.0;
  double reference = 0.0;  ///< |xi|^2 (low band) or W^eps(xi)^2 (high band)
  double ratio = 0.0;
  bool high = false;
};

struct SymbolExperiment {
  SymbolOptions options;
  std::vector<SymbolRow> rows;
  RatioBand low, high;
};

SymbolExperiment run_symbol_experiment(const SymbolOptions& opt);

// ---------------------------------------------------------------- norm equivalence

struct EquivalenceOptions {
  std::vector<double> eps_list = dyadic_eps(3, 6);
  std::vector<int> grid_n{16, 32};
  double half_width = 8.0;
  double gamma = 0.0;
  double s = 0.5;
  int l_max = 16;
  double r_max = 10.0;
  double dr = 0.25;
  int shells = 48;
  std::uint64_t seed = 20240607;
};

struct EquivalenceRow {
  std::string function_id;
  int n = 0;
  double eps = 0.0;
  double quadratic_form = 0.0;
  double lhs = 0.0;  ///< <L f, f> + |f|^2_{L^2_{gamma/2}}
  double rhs = 0.0;  ///< |f|^2_{eps,gamma/2}
  double ratio = 0.0;
  double tail = 0.0;
};

struct EquivalenceExperiment {
  EquivalenceOptions options;
  std::vector<EquivalenceRow> rows;
  std::vector<RatioBand> bands;  ///< one per grid size, same order as options.grid_n
  double max_span = 0.0;
  /// |span(n_last) / span(n_first) - 1|.
  double refinement_change = 0.0;
};

EquivalenceExperiment run_equivalence_experiment(const EquivalenceOptions& opt);

// ---------------------------------------------------------------- semigroup

struct RetentionOptions {
  std::vector<double> eps_list = dyadic_eps(4, 5);
  double gamma = -1.0;
  double s = 0.5;
  int j = 7;
  double N0 = 2.0;
  double eta = 0.1;
};

struct RetentionExperiment {
  RetentionOptions options;
  std::vector<DecaySeries> series;
  std::vector<RetentionReport> reports;
  /// (max C_fit - min C_fit) / min C_fit.
  double C_fit_variation = 0.0;
  bool pass() const;
};

RetentionExperiment run_retention_experiment(const RetentionOptions& opt);

struct CrossoverOptions {
  std::vector<double> eps_list = dyadic_eps(3, 5);
  double gamma = -1.0;
  double s = 0.5;
  /// Datum (I - P) <v>^{-a}, normalized.
  double decay_power = 4.0;
  double r_max = 1024.0;
  double T = 40.0;
  int cadence = 20;
};

struct CrossoverExperiment {
  CrossoverOptions options;
  std::vector<DecaySeries> series;
  std::vector<std::optional<double>> t_star;
  /// t* against -ln eps over the runs where a crossover was found.
  LinearFit fit;
  int detected = 0;
  bool pass() const { return detected >= 3 && fit.slope > 0.0 && fit.r2 >= 0.9; }
};

CrossoverExperiment run_crossover_experiment(const CrossoverOptions& opt);

// ---------------------------------------------------------------- commutator

struct CommutatorOptions {
  std::vector<double> eps_list = dyadic_eps(3, 6);
  double gamma = 0.0;
  double s = 0.5;
  /// f = <v>^{-a}.
  double decay_power = 2.5;
  Localizer kind = Localizer::Low;
  double r_max = 192.0;
};

struct CommutatorRow {
  double eps = 0.0;
  double M = 0.0;
  double pairing = 0.0;
};

struct CommutatorExperiment {
  CommutatorOptions options;
  std::vector<CommutatorRow> rows;
  LinearFit fit;  ///< log |pairing| against log eps
  double target = 0.0;
  bool pass(double tol = 0.1) const { return std::abs(fit.slope - target) <= tol; }
};

CommutatorExperiment run_commutator_experiment(const CommutatorOptions& opt);

// ---------------------------------------------------------------- operator difference

struct OperatorDiffOptions {
  std::vector<double> eps_list = dyadic_eps(3, 6);
  double gamma = 0.0;
  double s = 0.5;
  /// 0: min(eps_list) / 8.
  double eps_ref = 0.0;
  double r_max = 12.0;
  double dr = 0.25;
};

struct OperatorDiffRow {
  double eps = 0.0;
  double pairing = 0.0;     ///< <L^eps h, f>
  double difference = 0.0;  ///< <(L^eps - L^eps_ref) h, f>
};

struct OperatorDiffExperiment {
  OperatorDiffOptions options;
  double eps_ref = 0.0;
  double reference_pairing = 0.0;
  std::vector<OperatorDiffRow> rows;
  PowerDifferenceFit fit;
  double target = 0.0;
  bool pass(double tol = 0.15) const { return std::abs(fit.exponent - target) <= tol; }
};

OperatorDiffExperiment run_operator_diff_experiment(const OperatorDiffOptions& opt);

// ---------------------------------------------------------------- operator sanity

struct SanityOptions {
  int n = 32;
  double half_width = 8.0;
  double gamma = 0.0;
  double s = 0.5;
  double eps = 0.125;
  /// Gain from partners near |v| = 6 lands beyond 8.
  double r_max = 10.0;
  double dr = 0.25;
  std::uint64_t seed = 20240607;
};

struct MomentRow {
  std::string function_id;
  std::string moment;  ///< mass, px, py, pz, energy
  double value = 0.0;
  double scale = 0.0;  ///< int |v|^p (|gain| + |loss|), p the degree of the invariant
  double relative = 0.0;
};

struct NullRow {
  std::string element;
  double residual = 0.0;  ///< |L e|
  double scale = 0.0;     ///< |loss part of L e|
  double relative = 0.0;
};

struct SanityExperiment {
  SanityOptions options;
  double qmumu_residual = 0.0;  ///< |Q(mu,mu)| / |loss part of Q(mu,mu)|
  std::vector<MomentRow> moments;
  std::vector<NullRow> null_space;
  double max_moment = 0.0;
  double max_null = 0.0;
};

SanityExperiment run_sanity_experiment(const SanityOptions& opt);

// ---------------------------------------------------------------- bobylev

struct BobylevExperimentOptions {
  int n = 32;
  double half_width = 8.0;
  double eps = 0.0625;
  double s = 0.5;
  int l_max = 20;
  /// Gain from ring_2 (support up to 8) lands well beyond 8.
  double r_max = 12.0;
  double dr = 0.125;
  std::uint64_t seed = 20240607;
};

struct BobylevRow {
  std::string function_id;
  double frequency = 0.0;
  double physical = 0.0;
  double relative = 0.0;
};

struct BobylevExperiment {
  BobylevExperimentOptions options;
  std::vector<BobylevRow> rows;
  double max_relative = 0.0;
};

BobylevExperiment run_bobylev_experiment(const BobylevExperimentOptions& opt);

}  // namespace boltzgap
