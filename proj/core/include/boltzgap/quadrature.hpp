#pragma once

#include <vector>

namespace boltzgap {

struct QuadratureRule {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

/// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Composite Gauss-Legendre over consecutive panels [edges[i], edges[i+1]].
QuadratureRule composite_gauss(const std::vector<double>& edges, int per_panel);

}  // namespace boltzgap
