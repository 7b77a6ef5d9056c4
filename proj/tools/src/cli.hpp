#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace boltzgap::cli {

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"ode",        "fgap",          "symbol",   "norm-equivalence",
                                              "semigroup",  "commutator",    "operator-diff", "sanity",
                                              "bobylev"};
  return names;
}

/// Resolved run parameters. Unset optionals take the experiment's default.
struct RunConfig {
  std::string experiment;
  std::optional<double> eps;
  std::string eps_list;  ///< "2^-3..2^-7", or comma separated values (each may be 2^-k)
  std::optional<double> s;
  std::optional<double> gamma;
  std::vector<int> grid_n;
  double half_width = 8.0;
  std::string out = ".";
  std::uint64_t seed = 20240607;
  // ode
  double dt = 1e-4;
  int stride = 100;
  // semigroup
  std::string mode = "both";  ///< retention, crossover or both
  bool force = false;
};

/// Raised for anything wrong with the configuration (exit status 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses an eps specification; throws ConfigError.
std::vector<double> parse_eps_list(const std::string& text);

/// Checks the experiment name and parameter ranges; throws ConfigError.
void validate(const RunConfig& cfg);

/// eps values in effect for the experiment.
std::vector<double> effective_eps(const RunConfig& cfg);

/// One key=value per line in a fixed order, every default resolved.
std::string canonical_text(const RunConfig& cfg);

/// FNV-1a 64 of the canonical text as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

/// Shortest form that keeps 17 significant digits.
std::string format_number(double x);

/// Runs the experiment and writes its CSV files and summary.json into
/// cfg.out. Returns the process exit status (0, 2 or 3); errors are
/// reported as one JSON line on `err`.
int run(const RunConfig& cfg, std::ostream& log, std::ostream& err);

/// Full command line entry point.
int main(int argc, char** argv);

}  // namespace boltzgap::cli
