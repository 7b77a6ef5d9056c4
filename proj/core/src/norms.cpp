#include "boltzgap/norms.hpp"

#include <stdexcept>

#include "boltzgap/fourier.hpp"
#include "boltzgap/kernel.hpp"

namespace boltzgap {

double weighted_L2(const Field& f, double l) {
  const auto& g = f.grid();
  std::vector<double> t(f.size());
  for (std::size_t q = 0; q < f.size(); ++q) t[q] = f[q] * f[q] * std::pow(japanese(norm3(g.node(q))), 2.0 * l);
  return std::sqrt(pairwise_sum(t) * g.cell_volume());
}

Field multiplier_WepsD(const Field& f, double eps, double s) {
  return apply_radial_multiplier(f, [&](double xi) { return weight_Weps(xi, eps, s); });
}

Eigen::MatrixXd spherical_multiplier_coeffs(const Eigen::MatrixXd& coeffs, int l_max, double eps, double s) {
  Eigen::MatrixXd out = coeffs;
  for (int l = 0; l <= l_max; ++l) {
    const double w = weight_Weps(std::sqrt(l * (l + 1.0)), eps, s);
    for (int m = -l; m <= l; ++m) out.col(lm_index(l, m)) *= w;
  }
  return out;
}

Field spherical_multiplier(const Field& f, double eps, double s, const SphericalTransform& st, double* tail) {
  const Eigen::MatrixXd c = st.analyze(f);
  if (tail) *tail = st.tail_fraction(c);
  return st.synthesize(spherical_multiplier_coeffs(c, st.l_max(), eps, s), f.grid_ptr());
}

TripleNormReport triple_norm(const Field& f, double eps, double s, double l, const SphericalTransform& st) {
  const Field wl = multiply_radial(f, [l](double r) { return std::pow(japanese(r), l); });
  TripleNormReport rep;
  const Field ww = multiply_radial(wl, [&](double r) { return weight_Weps(r, eps, s); });
  rep.weight_term = inner(ww, ww);
  const Field wd = multiplier_WepsD(wl, eps, s);
  rep.fourier_term = inner(wd, wd);
  const Eigen::MatrixXd c = st.analyze(wl);
  rep.tail = st.tail_fraction(c);
  rep.spherical_term = st.energy(spherical_multiplier_coeffs(c, st.l_max(), eps, s));
  rep.total = rep.weight_term + rep.fourier_term + rep.spherical_term;
  return rep;
}

namespace {
double a_constant(ProjectionVariant v) { return v == ProjectionVariant::Orthogonal ? 2.5 : 2.0; }
}  // namespace

MacroCoefficients macro_coefficients(const Field& f, ProjectionVariant variant) {
  const auto& g = f.grid();
  const double ac = a_constant(variant);
  std::vector<double> ta(f.size()), tc(f.size()), tb[3];
  for (auto& t : tb) t.resize(f.size());
  for (std::size_t q = 0; q < f.size(); ++q) {
    const Vec3 v = g.node(q);
    const double r2 = dot3(v, v);
    const double w = sqrt_maxwellian_value(v) * f[q];
    ta[q] = (ac - 0.5 * r2) * w;
    tc[q] = (r2 / 6.0 - 0.5) * w;
    for (int d = 0; d < 3; ++d) tb[d][q] = v[d] * w;
  }
  const double h3 = g.cell_volume();
  MacroCoefficients m;
  m.a = pairwise_sum(ta) * h3;
  m.c = pairwise_sum(tc) * h3;
  for (int d = 0; d < 3; ++d) m.b[d] = pairwise_sum(tb[d]) * h3;
  return m;
}

Field macro_field(const MacroCoefficients& m, const GridPtr& grid) {
  return Field::from_function(
      grid, [&](const Vec3& v) { return (m.a + dot3(m.b, v) + m.c * dot3(v, v)) * sqrt_maxwellian_value(v); });
}

std::pair<MacroCoefficients, Field> project_N(const Field& f, ProjectionVariant variant) {
  MacroCoefficients m = macro_coefficients(f, variant);
  Field p = macro_field(m, f.grid_ptr());
  return {m, std::move(p)};
}

Field project_out_N(const Field& f) { return f - project_N(f).second; }

// v_x, v_y, v_z = r sqrt(4 pi / 3) Y_1^{1, -1, 0}; a radial g integrates
// against the l = 0 profile with sqrt(4 pi).
MacroCoefficients macro_coefficients(const SpectralField& f, ProjectionVariant variant) {
  const auto& rad = *f.radial;
  const auto& r = rad.nodes();
  const auto& w = rad.weights();
  const double ac = a_constant(variant);
  const Eigen::MatrixXd vals = f.node_values();
  const double c0 = std::sqrt(4.0 * kPi), c1 = std::sqrt(4.0 * kPi / 3.0);
  const int lm_of_axis[3] = {lm_index(1, 1), lm_index(1, -1), lm_index(1, 0)};
  std::vector<double> ta(r.size()), tc(r.size()), tb[3];
  for (auto& t : tb) t.assign(r.size(), 0.0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const double base = w[i] * r[i] * r[i] * sqrt_maxwellian_radial(r[i]);
    const double r2 = r[i] * r[i];
    ta[i] = base * c0 * (ac - 0.5 * r2) * vals(ii, 0);
    tc[i] = base * c0 * (r2 / 6.0 - 0.5) * vals(ii, 0);
    if (f.l_max >= 1)
      for (int d = 0; d < 3; ++d) tb[d][i] = base * c1 * r[i] * vals(ii, lm_of_axis[d]);
  }
  MacroCoefficients m;
  m.a = pairwise_sum(ta);
  m.c = pairwise_sum(tc);
  for (int d = 0; d < 3; ++d) m.b[d] = pairwise_sum(tb[d]);
  return m;
}

SpectralField macro_field(const MacroCoefficients& m, const RadialPtr& radial, int l_max) {
  SpectralField out = SpectralField::zero(radial, l_max);
  const double c0 = std::sqrt(4.0 * kPi), c1 = std::sqrt(4.0 * kPi / 3.0);
  out.coeffs.col(0) =
      radial->project([&](double r) { return c0 * (m.a + m.c * r * r) * sqrt_maxwellian_radial(r); }, 0);
  if (l_max >= 1) {
    const int lm_of_axis[3] = {lm_index(1, 1), lm_index(1, -1), lm_index(1, 0)};
    for (int d = 0; d < 3; ++d)
      out.coeffs.col(lm_of_axis[d]) =
          radial->project([&](double r) { return c1 * m.b[d] * r * sqrt_maxwellian_radial(r); }, 1);
  }
  return out;
}

SpectralField project_out_N(const SpectralField& f) { return f - macro_field(macro_coefficients(f), f.radial, f.l_max); }

namespace {
EquivalenceTerms finish(double qf, const Field& f, double eps, double s, double gamma, const SphericalTransform& st) {
  EquivalenceTerms t;
  t.quadratic_form = qf;
  const double w = weighted_L2(f, 0.5 * gamma);
  t.weighted_l2 = w * w;
  t.triple = triple_norm(f, eps, s, 0.5 * gamma, st);
  if (!(t.triple.total > 0.0)) throw std::invalid_argument("zero triple norm: degenerate input");
  t.ratio = (t.quadratic_form + t.weighted_l2) / t.triple.total;
  return t;
}
}  // namespace

EquivalenceTerms equivalence_ratio(const Field& f, const RotationalOperator& L, const SphericalTransform& st) {
  const SpectralField sf = analyze_field(f, L.radial(), L.l_max());
  const auto& k = L.kernel();
  return finish(L.quadratic_form(sf), f, k.eps, k.s, k.gamma, st);
}

EquivalenceTerms equivalence_ratio(const Field& f, const CollisionWorkspace& ws, const SphericalTransform& st) {
  const auto& k = ws.kernel();
  return finish(quadratic_form(f, ws), f, k.eps, k.s, k.gamma, st);
}

}  // namespace boltzgap
