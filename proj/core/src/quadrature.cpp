#include "boltzgap/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace boltzgap {

namespace {
struct TableDeleter {
  void operator()(gsl_integration_glfixed_table* t) const { gsl_integration_glfixed_table_free(t); }
};

// Reference nodes on [-1, 1], cached per order.
const std::vector<std::pair<double, double>>& reference_rule(int n) {
  static std::mutex m;
  static std::map<int, std::vector<std::pair<double, double>>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::unique_ptr<gsl_integration_glfixed_table, TableDeleter> t(gsl_integration_glfixed_table_alloc(n));
  std::vector<std::pair<double, double>> r(n);
  for (int i = 0; i < n; ++i) gsl_integration_glfixed_point(-1.0, 1.0, i, &r[i].first, &r[i].second, t.get());
  return cache.emplace(n, std::move(r)).first->second;
}
}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
  const auto& ref = reference_rule(n);
  QuadratureRule q;
  q.x.resize(n);
  q.w.resize(n);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    q.x[i] = c + h * ref[i].first;
    q.w[i] = h * ref[i].second;
  }
  return q;
}

QuadratureRule composite_gauss(const std::vector<double>& edges, int per_panel) {
  QuadratureRule q;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    if (!(edges[p + 1] > edges[p])) continue;
    auto r = gauss_legendre(per_panel, edges[p], edges[p + 1]);
    q.x.insert(q.x.end(), r.x.begin(), r.x.end());
    q.w.insert(q.w.end(), r.w.begin(), r.w.end());
  }
  return q;
}

}  // namespace boltzgap
