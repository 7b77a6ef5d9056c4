#pragma once

#include <Eigen/Dense>
#include <vector>

#include "boltzgap/grid.hpp"
#include "boltzgap/kernel.hpp"

namespace boltzgap {

/// Grid-based evaluation of the collision integral by direct summation over
/// v_* nodes and the angular rule, with off-grid values v', v'_* read through
/// a Lagrange interpolator. Cost is O(N^2 N_sigma); meant for small grids.
class CollisionWorkspace {
 public:
  /// order 1 is trilinear, 3 tricubic. For gamma < 0 and cfg.delta == 0 the
  /// regularization radius becomes h/2.
  CollisionWorkspace(GridPtr grid, const KernelConfig& cfg, int interp_order = 3, unsigned threads = 0);

  const GridPtr& grid() const { return grid_; }
  const KernelConfig& kernel() const { return cfg_; }
  const AngularRule& rule() const { return rule_; }
  int order() const { return order_; }
  unsigned threads() const { return threads_; }
  /// int b^eps d sigma by the rule.
  double lambda() const { return lambda_; }

  /// Angular nodes relative to e_z with weight w_theta * b^eps * w_phi.
  struct SigmaNode {
    Vec3 dir;
    double w;
  };
  const std::vector<SigmaNode>& sigma() const { return sigma_; }

 private:
  GridPtr grid_;
  KernelConfig cfg_;
  AngularRule rule_;
  int order_;
  unsigned threads_;
  double lambda_ = 0.0;
  std::vector<SigmaNode> sigma_;
};

/// Orthonormal frame (e1, e2) completing the unit vector a.
void complete_frame(const Vec3& a, Vec3& e1, Vec3& e2);
/// sigma = cos(theta) a + sin(theta)(cos(phi) e1 + sin(phi) e2) for a rule node given relative to e_z.
inline Vec3 rotate_to(const Vec3& local, const Vec3& a, const Vec3& e1, const Vec3& e2) {
  return {local[2] * a[0] + local[0] * e1[0] + local[1] * e2[0], local[2] * a[1] + local[0] * e1[1] + local[1] * e2[1],
          local[2] * a[2] + local[0] * e1[2] + local[1] * e2[2]};
}
/// Post-collision pair (v', v'_*) for direction sigma.
inline void post_collision(const Vec3& v, const Vec3& vs, const Vec3& sigma, Vec3& vp, Vec3& vps) {
  const Vec3 u{v[0] - vs[0], v[1] - vs[1], v[2] - vs[2]};
  const double h = 0.5 * norm3(u);
  for (int d = 0; d < 3; ++d) {
    const double m = 0.5 * (v[d] + vs[d]);
    vp[d] = m + h * sigma[d];
    vps[d] = m - h * sigma[d];
  }
}

/// Q^eps(g, h) at every grid node. The loss term uses g_* h int b^eps d sigma.
Field Q_eps(const Field& g, const Field& h, const CollisionWorkspace& ws);
/// mu^{-1/2} Q^eps(mu^{1/2} g, mu^{1/2} h), set to zero where mu^{1/2} < 1e-12.
Field Gamma_eps(const Field& g, const Field& h, const CollisionWorkspace& ws);
/// -Gamma^eps(mu^{1/2}, f) - Gamma^eps(f, mu^{1/2}).
Field L_eps(const Field& f, const CollisionWorkspace& ws);
/// <L^eps f, f> with the discrete inner product.
double quadratic_form(const Field& f, const CollisionWorkspace& ws);
/// Matrix of L_eps: (L f)_p = sum_q A(p, q) f_q.
Eigen::MatrixXd assemble_L_dense(const CollisionWorkspace& ws);

/// <L (chi_M f), chi_M f> - <L f, chi_M^2 f>, i.e. <[L, chi_M] f, chi_M f>.
double commutator_pairing(const Field& f, Localizer kind, double M, const CollisionWorkspace& ws);

/// int b^eps |u|^gamma g_* (f' - f)^2.
double seminorm_R(const Field& g, const Field& f, const CollisionWorkspace& ws);
/// Same with <u>^gamma.
double seminorm_R_star(const Field& g, const Field& f, const CollisionWorkspace& ws);
/// int b^eps |u|^gamma f_*^2 (mu'^{1/2} - mu^{1/2})^2.
double seminorm_M(const Field& f, const CollisionWorkspace& ws);

}  // namespace boltzgap
