#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

namespace boltzgap {

/// Clamped cubic B-splines on breakpoints 0 = x_0 < ... < x_m = R.
class BSplineBasis {
 public:
  explicit BSplineBasis(std::vector<double> breakpoints);

  int size() const { return static_cast<int>(breakpoints_.size()) + 2; }
  int intervals() const { return static_cast<int>(breakpoints_.size()) - 1; }
  double r_max() const { return breakpoints_.back(); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  /// Writes the four possibly nonzero values at r and returns the index of the
  /// first one, or -1 when r lies outside [0, R].
  int eval(double r, double vals[4]) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> knots_;
};

std::vector<double> uniform_breakpoints(double r_max, double dr);
/// Spacing dr_inner up to r_inner, then growing geometrically by `growth`
/// per interval, capped at dr_max, until r_max is reached.
std::vector<double> graded_breakpoints(double r_inner, double dr_inner, double r_max, double growth, double dr_max);

/// B-spline basis with a Gauss rule on every interval, mass matrices and
/// weighted L^2(r^2 dr) projection.
class RadialDiscretization {
 public:
  RadialDiscretization(std::vector<double> breakpoints, int nodes_per_interval = 3);

  const BSplineBasis& basis() const { return basis_; }
  int size() const { return basis_.size(); }
  double r_max() const { return basis_.r_max(); }
  const std::vector<double>& nodes() const { return r_; }
  const std::vector<double>& weights() const { return w_; }
  /// Nodes x basis values.
  const Eigen::MatrixXd& phi() const { return phi_; }
  /// First active basis function for degree l (B_0 is excluded for l >= 1).
  int first_active(int l) const { return l == 0 ? 0 : 1; }
  /// int B_j B_k w(r)^2 r^2 dr with inactive rows and columns replaced by identity.
  Eigen::MatrixXd weighted_mass(int l, const std::function<double(double)>& w) const;
  const Eigen::MatrixXd& mass(int l) const { return l == 0 ? mass0_ : mass1_; }
  /// Least-squares fit of node values in L^2(r^2 dr).
  Eigen::VectorXd project(const Eigen::VectorXd& node_values, int l) const;
  Eigen::VectorXd project(const std::function<double(double)>& fn, int l) const;
  /// Solves mass(l) x = rhs.
  Eigen::VectorXd solve_mass(int l, const Eigen::VectorXd& rhs) const { return (l == 0 ? llt0_ : llt1_).solve(rhs); }
  Eigen::VectorXd evaluate_nodes(const Eigen::VectorXd& coeffs) const { return phi_ * coeffs; }
  double evaluate(const Eigen::VectorXd& coeffs, double r) const;

 private:
  BSplineBasis basis_;
  std::vector<double> r_, w_;
  Eigen::MatrixXd phi_;
  Eigen::MatrixXd mass0_, mass1_;
  Eigen::LLT<Eigen::MatrixXd> llt0_, llt1_;
};

using RadialPtr = std::shared_ptr<const RadialDiscretization>;

}  // namespace boltzgap
