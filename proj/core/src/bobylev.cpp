#include "boltzgap/bobylev.hpp"

#include <stdexcept>

#include "boltzgap/fourier.hpp"
#include "boltzgap/interpolation.hpp"
#include "parallel.hpp"

namespace boltzgap {

double bobylev_R(const Field& f, const KernelConfig& cfg, const BobylevOptions& opt) {
  cfg.validate();
  if (cfg.gamma != 0.0) throw std::invalid_argument("the frequency form requires gamma = 0");
  const VelocityGrid& g = f.grid();
  const int n = g.n(), m = 2 * n;

  // Zero padding to [-2L, 2L)^3 keeps h and halves the dual spacing.
  auto padded = make_grid(m, 2.0 * g.half_width());
  Field fp(padded);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) fp[padded->index(i + n / 2, j + n / 2, k + n / 2)] = f[g.index(i, j, k)];
  const ComplexField F = FourierTransform(padded).forward(fp);

  // Frequencies as a lattice on [-n dxi, n dxi)^3, node i <-> mode i - n.
  const double dxi = padded->dual_spacing();
  auto fgrid = make_grid(m, n * dxi);
  Field re(fgrid), im(fgrid);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const auto src = padded->index((i + n) % m, (j + n) % m, (k + n) % m);
        re[fgrid->index(i, j, k)] = F[src].real();
        im[fgrid->index(i, j, k)] = F[src].imag();
      }

  double cutoff = opt.xi_cutoff;
  if (cutoff <= 0.0) {
    double peak = 0.0;
    for (std::size_t q = 0; q < fgrid->size(); ++q) peak = std::max(peak, std::norm(cplx(re[q], im[q])));
    double rmax = 0.0;
    for (std::size_t q = 0; q < fgrid->size(); ++q)
      if (std::norm(cplx(re[q], im[q])) > opt.spectrum_floor * peak) rmax = std::max(rmax, norm3(fgrid->node(q)));
    // |xi+| >= |xi| cos(pi/4), so every xi whose xi+ can carry mass is kept.
    cutoff = std::sqrt(2.0) * rmax + dxi;
  }
  cutoff = std::min(cutoff, n * dxi);

  const GridInterpolator Ire(re, 3), Iim(im, 3);
  const AngularRule rule = angular_quadrature(cfg);
  struct Node {
    Vec3 dir;
    double w;
  };
  std::vector<Node> sig;
  for (std::size_t i = 0; i < rule.theta.size(); ++i) {
    const double w = rule.w_theta[i] * rule.b[i] * rule.w_phi;
    if (w == 0.0) continue;
    const double ct = std::cos(rule.theta[i]), st = std::sin(rule.theta[i]);
    for (std::size_t j = 0; j < rule.cos_phi.size(); ++j) sig.push_back({{st * rule.cos_phi[j], st * rule.sin_phi[j], ct}, w});
  }

  std::vector<double> per(fgrid->size(), 0.0);
  detail::parallel_for(fgrid->size(), opt.threads, [&](std::size_t q) {
    const Vec3 xi = fgrid->node(q);
    const double r = norm3(xi);
    if (r == 0.0 || r > cutoff) return;
    const cplx F0(re[q], im[q]);
    const Vec3 a{xi[0] / r, xi[1] / r, xi[2] / r};
    Vec3 e1, e2;
    complete_frame(a, e1, e2);
    double acc = 0.0;
    for (const auto& sn : sig) {
      const Vec3 s = rotate_to(sn.dir, a, e1, e2);
      const Vec3 xp{0.5 * (xi[0] + r * s[0]), 0.5 * (xi[1] + r * s[1]), 0.5 * (xi[2] + r * s[2])};
      const Vec3 xm{xi[0] - xp[0], xi[1] - xp[1], xi[2] - xp[2]};
      const cplx Fp(Ire(xp), Iim(xp));
      const double mu_m = std::exp(-0.5 * dot3(xm, xm));
      acc += sn.w * (std::norm(F0 - Fp) + 2.0 * ((1.0 - mu_m) * Fp * std::conj(F0)).real());
    }
    per[q] = acc;
  });
  return pairwise_sum(per) * dxi * dxi * dxi / std::pow(2.0 * kPi, 3);
}

}  // namespace boltzgap
