#include "boltzgap/fourier.hpp"

#include <fftw3.h>

#include <mutex>

namespace boltzgap {

namespace {
// FFTW planning is not thread safe.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

double phase_sign(int i, int j, int k) { return ((i + j + k) & 1) ? -1.0 : 1.0; }
}  // namespace

FourierTransform::FourierTransform(GridPtr grid) : grid_(std::move(grid)), buf_(grid_->size()) {
  const int n = grid_->n();
  auto* p = reinterpret_cast<fftw_complex*>(buf_.data());
  std::lock_guard<std::mutex> lock(plan_mutex());
  plan_fwd_ = fftw_plan_dft_3d(n, n, n, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_3d(n, n, n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
}

FourierTransform::~FourierTransform() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void FourierTransform::run(bool forward, cplx* data) const {
  fftw_execute_dft(static_cast<fftw_plan>(forward ? plan_fwd_ : plan_bwd_),
                   reinterpret_cast<fftw_complex*>(data), reinterpret_cast<fftw_complex*>(data));
}

// exp(-i xi_m . v_k) = (-1)^{m_x+m_y+m_z} exp(-2 pi i m.k / n) since v_k = -L + k h.
ComplexField FourierTransform::forward(const ComplexField& f) const {
  if (!(f.grid() == *grid_)) throw std::invalid_argument("grid mismatch");
  const int n = grid_->n();
  std::vector<cplx> out(f.values());
  run(true, out.data());
  const double h3 = grid_->cell_volume();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out[grid_->index(i, j, k)] *= h3 * phase_sign(i, j, k);
  return ComplexField(grid_, std::move(out));
}

ComplexField FourierTransform::inverse(const ComplexField& F) const {
  if (!(F.grid() == *grid_)) throw std::invalid_argument("grid mismatch");
  const int n = grid_->n();
  std::vector<cplx> out(F.values());
  const double scale = 1.0 / std::pow(2.0 * grid_->half_width(), 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out[grid_->index(i, j, k)] *= scale * phase_sign(i, j, k);
  run(false, out.data());
  return ComplexField(grid_, std::move(out));
}

Field apply_radial_multiplier(const Field& f, const std::function<double(double)>& symbol) {
  FourierTransform ft(f.grid_ptr());
  ComplexField F = ft.forward(f);
  const auto& g = f.grid();
  for (std::size_t q = 0; q < F.size(); ++q) F[q] *= symbol(norm3(g.dual_node(q)));
  return real_part(ft.inverse(F));
}

Field spectral_upsample(const Field& f, int factor) {
  if (factor < 1) throw std::invalid_argument("upsample factor must be >= 1");
  if (factor == 1) return f;
  const auto& g = f.grid();
  const int n = g.n();
  const int m = n * factor;
  auto fine = make_grid(m, g.half_width());
  FourierTransform ft(f.grid_ptr());
  ComplexField F = ft.forward(f);

  // Target slots of a coarse mode along one axis; the Nyquist mode is split
  // evenly between +n/2 and -n/2 so real data stays real.
  auto targets = [&](int i, int* t, double* w) {
    const int k = g.mode(i);
    if (k == -n / 2) {
      t[0] = m - n / 2;
      t[1] = n / 2;
      w[0] = w[1] = 0.5;
      return 2;
    }
    t[0] = k >= 0 ? k : m + k;
    w[0] = 1.0;
    return 1;
  };

  ComplexField G(fine);
  for (int i = 0; i < n; ++i) {
    int ti[2], tj[2], tk[2];
    double wi[2], wj[2], wk[2];
    const int ni = targets(i, ti, wi);
    for (int j = 0; j < n; ++j) {
      const int nj = targets(j, tj, wj);
      for (int k = 0; k < n; ++k) {
        const int nk = targets(k, tk, wk);
        const cplx val = F[g.index(i, j, k)];
        for (int a = 0; a < ni; ++a)
          for (int b = 0; b < nj; ++b)
            for (int c = 0; c < nk; ++c) G[fine->index(ti[a], tj[b], tk[c])] += val * (wi[a] * wj[b] * wk[c]);
      }
    }
  }
  FourierTransform ftf(fine);
  return real_part(ftf.inverse(G));
}

}  // namespace boltzgap
