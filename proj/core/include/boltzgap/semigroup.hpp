#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "boltzgap/grid.hpp"
#include "boltzgap/norms.hpp"
#include "boltzgap/rotational.hpp"
#include "boltzgap/spectral.hpp"

namespace boltzgap {

struct EvolutionConfig {
  double T = 1.0;
  /// Fixed step; 0 selects c_stab / |K|_est from a power iteration.
  double dt = 0.0;
  double c_stab = 0.5;
  int power_iterations = 5;
  /// Steps between records.
  int cadence = 1;
  /// Re-apply I - P at every record.
  bool reproject = false;
  /// Relative energy growth per step that aborts the run.
  double abort_growth = 1e-6;
  void validate() const;
};

/// Raised when the energy grows faster than the configured tolerance.
class StabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DecaySeries {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<double> energy;  ///< |f|^2
  std::vector<double> low;     ///< |phi(eps v) f|^2
  std::vector<double> high;    ///< |(1 - phi(eps v)) f|^2
  std::vector<int> block_ids;
  std::vector<std::vector<double>> blocks;  ///< blocks[b][record] = |P_j f|^2, j = block_ids[b]
  std::vector<MacroCoefficients> macro;
  /// Largest relative energy increase over one step.
  double max_step_growth = 0.0;
};

/// M c' = -A c with quadratic-form diagnostics. M is symmetric positive
/// definite; energies are c^T B c for the stored forms.
struct LinearEvolution {
  Eigen::MatrixXd M, A;
  Eigen::MatrixXd low_form, high_form;
  std::vector<int> block_ids;
  std::vector<Eigen::MatrixXd> block_forms;
  std::function<MacroCoefficients(const Eigen::VectorXd&)> macro;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> reproject;
};

/// Classical RK4 trajectory.
DecaySeries evolve(const LinearEvolution& sys, const Eigen::VectorXd& c0, const EvolutionConfig& cfg,
                   Eigen::VectorXd* final_state = nullptr);

/// Grid route: L given as a dense matrix on the grid.
LinearEvolution grid_evolution(const Eigen::MatrixXd& L, const GridPtr& grid, double eps,
                               const std::vector<int>& block_ids);
/// Spectral route for one degree-l block (radial data use l = 0), with the
/// symmetric Galerkin stiffness. `deflate` removes the collision invariants
/// of degree l from the operator (M-orthogonal projection on both sides);
/// `reproject` is then that projection.
LinearEvolution spectral_evolution(const RotationalOperator& L, int l, double eps, const std::vector<int>& block_ids,
                                   bool deflate = true);

/// Grid ring datum: smooth radial bump on 2^j <= |v| <= N0 2^j, normalized,
/// projected by I - P and normalized again.
Field make_ring_datum(const GridPtr& grid, int j, double N0);
/// Radial version on a B-spline basis (l = 0 profile).
SpectralField make_ring_datum(const RadialPtr& radial, int j, double N0);

/// Break point of the slope of log |f|^2 against t, or nothing when a single
/// regime explains the series.
std::optional<double> detect_crossover(const DecaySeries& series);
std::optional<double> detect_crossover(const std::vector<double>& t, const std::vector<double>& energy);

/// Energy retention of a dyadic block over t <= eta 2^{-j gamma} eps^{2s}.
/// C_fit is the smallest C with B(0) - B(t) <= C (eps^{-2s} 2^{j gamma} t + eps^{2s})
/// on the window; the bound B(t) >= 1 - 4 eta - C_fit eps^{2s} is then checked.
struct RetentionReport {
  double window_end = 0.0;
  double C_fit = 0.0;
  double min_block = 0.0;
  double bound = 0.0;  ///< 1 - 4 eta - C_fit eps^{2s}
  double margin = 0.0; ///< min_block - bound
  int records = 0;
  bool holds = false;
};
RetentionReport retention_check(const DecaySeries& series, int block_index, double eps, double s, double gamma, int j,
                                double eta);

/// Exponential envelope |f(t)|^2 <= A e^{-ct} |f_0|^2 fitted on t <= t_end
/// (c from the chord of log energy, A the smallest prefactor that makes the
/// envelope hold at every record).
struct ExponentialFit {
  double c = 0.0;
  double A = 0.0;
  bool holds = false;
};
ExponentialFit exponential_envelope(const DecaySeries& series, double t_end);

/// Bound e^{-ct}|f_0^l|^2 + |f_0^h|^2 + C eps^{2s} |f_0|^2 with c from the
/// envelope and C the smallest constant that makes it hold.
struct SplitBoundFit {
  double c = 0.0;
  double C = 0.0;
  bool holds = false;
};
SplitBoundFit split_bound(const DecaySeries& series, double eps, double s);

}  // namespace boltzgap
