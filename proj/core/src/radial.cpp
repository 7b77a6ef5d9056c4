#include "boltzgap/radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "boltzgap/quadrature.hpp"

namespace boltzgap {

BSplineBasis::BSplineBasis(std::vector<double> breakpoints) : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.size() < 2 || breakpoints_.front() != 0.0)
    throw std::invalid_argument("breakpoints must start at 0 and have at least two entries");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i)
    if (!(breakpoints_[i] > breakpoints_[i - 1])) throw std::invalid_argument("breakpoints must increase");
  knots_.assign(3, breakpoints_.front());
  knots_.insert(knots_.end(), breakpoints_.begin(), breakpoints_.end());
  knots_.insert(knots_.end(), 3, breakpoints_.back());
}

int BSplineBasis::eval(double r, double N[4]) const {
  const double R = breakpoints_.back();
  if (r < 0.0 || r > R) return -1;
  // Span k with knots_[k] <= r < knots_[k+1], k in [3, m+2].
  const int m = intervals();
  int span;
  if (r >= R) {
    span = m + 2;
  } else {
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), r);
    span = static_cast<int>(it - breakpoints_.begin()) - 1 + 3;
  }
  double left[4], right[4];
  N[0] = 1.0;
  for (int j = 1; j <= 3; ++j) {
    left[j] = r - knots_[span + 1 - j];
    right[j] = knots_[span + j] - r;
    double saved = 0.0;
    for (int q = 0; q < j; ++q) {
      const double tmp = N[q] / (right[q + 1] + left[j - q]);
      N[q] = saved + right[q + 1] * tmp;
      saved = left[j - q] * tmp;
    }
    N[j] = saved;
  }
  return span - 3;
}

std::vector<double> uniform_breakpoints(double r_max, double dr) {
  if (!(r_max > 0.0 && dr > 0.0)) throw std::invalid_argument("need r_max, dr > 0");
  const int n = std::max(1, static_cast<int>(std::ceil(r_max / dr - 1e-12)));
  std::vector<double> b(n + 1);
  for (int i = 0; i <= n; ++i) b[i] = r_max * i / n;
  return b;
}

std::vector<double> graded_breakpoints(double r_inner, double dr_inner, double r_max, double growth, double dr_max) {
  if (!(growth >= 1.0)) throw std::invalid_argument("growth must be >= 1");
  std::vector<double> b = uniform_breakpoints(std::min(r_inner, r_max), dr_inner);
  double dr = dr_inner;
  while (b.back() < r_max - 1e-12) {
    dr = std::min(dr * growth, dr_max);
    double next = b.back() + dr;
    if (next > r_max - 0.3 * dr) next = r_max;
    b.push_back(next);
  }
  return b;
}

RadialDiscretization::RadialDiscretization(std::vector<double> breakpoints, int nodes_per_interval)
    : basis_(breakpoints) {
  const auto q = composite_gauss(basis_.breakpoints(), nodes_per_interval);
  r_ = q.x;
  w_ = q.w;
  const int nb = basis_.size();
  phi_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r_.size()), nb);
  for (std::size_t i = 0; i < r_.size(); ++i) {
    double v[4];
    const int first = basis_.eval(r_[i], v);
    for (int a = 0; a < 4; ++a)
      if (first + a < nb) phi_(static_cast<Eigen::Index>(i), first + a) = v[a];
  }
  auto one = [](double) { return 1.0; };
  mass0_ = weighted_mass(0, one);
  mass1_ = weighted_mass(1, one);
  llt0_.compute(mass0_);
  llt1_.compute(mass1_);
}

Eigen::MatrixXd RadialDiscretization::weighted_mass(int l, const std::function<double(double)>& wfn) const {
  Eigen::VectorXd d(static_cast<Eigen::Index>(r_.size()));
  for (std::size_t i = 0; i < r_.size(); ++i) {
    const double wv = wfn(r_[i]);
    d(static_cast<Eigen::Index>(i)) = w_[i] * r_[i] * r_[i] * wv * wv;
  }
  Eigen::MatrixXd M = phi_.transpose() * d.asDiagonal() * phi_;
  const int f = first_active(l);
  for (int k = 0; k < f; ++k) {
    M.row(k).setZero();
    M.col(k).setZero();
    M(k, k) = 1.0;
  }
  return M;
}

Eigen::VectorXd RadialDiscretization::project(const Eigen::VectorXd& vals, int l) const {
  Eigen::VectorXd rhs(size());
  Eigen::VectorXd d(static_cast<Eigen::Index>(r_.size()));
  for (std::size_t i = 0; i < r_.size(); ++i) d(static_cast<Eigen::Index>(i)) = w_[i] * r_[i] * r_[i];
  rhs = phi_.transpose() * (d.asDiagonal() * vals);
  for (int k = 0; k < first_active(l); ++k) rhs(k) = 0.0;
  return (l == 0 ? llt0_ : llt1_).solve(rhs);
}

Eigen::VectorXd RadialDiscretization::project(const std::function<double(double)>& fn, int l) const {
  Eigen::VectorXd vals(static_cast<Eigen::Index>(r_.size()));
  for (std::size_t i = 0; i < r_.size(); ++i) vals(static_cast<Eigen::Index>(i)) = fn(r_[i]);
  return project(vals, l);
}

double RadialDiscretization::evaluate(const Eigen::VectorXd& c, double r) const {
  double v[4];
  const int first = basis_.eval(r, v);
  if (first < 0) return 0.0;
  double s = 0.0;
  for (int a = 0; a < 4; ++a)
    if (first + a < size()) s += c(first + a) * v[a];
  return s;
}

}  // namespace boltzgap
