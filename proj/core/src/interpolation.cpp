#include "boltzgap/interpolation.hpp"

#include "boltzgap/fourier.hpp"

namespace boltzgap {

GridInterpolator::GridInterpolator(const Field& f, int order)
    : data_(f.data()), n_(f.grid().n()), L_(f.grid().half_width()), inv_h_(1.0 / f.grid().spacing()), order_(order) {
  if (order != 1 && order != 3) throw std::invalid_argument("interpolation order must be 1 or 3");
}

int GridInterpolator::axis_weights(double x, int* first, double* w) const {
  const double u = (x + L_) * inv_h_;
  const double fl = std::floor(u);
  const double t = u - fl;
  const int i0 = static_cast<int>(fl);
  if (order_ == 1) {
    *first = i0;
    w[0] = 1.0 - t;
    w[1] = t;
    return 2;
  }
  *first = i0 - 1;
  w[0] = -t * (t - 1.0) * (t - 2.0) / 6.0;
  w[1] = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  w[2] = -(t + 1.0) * t * (t - 2.0) / 2.0;
  w[3] = (t + 1.0) * t * (t - 1.0) / 6.0;
  return 4;
}

int GridInterpolator::stencil(const Vec3& x, std::size_t* idx, double* w) const {
  int f0, f1, f2;
  double w0[4], w1[4], w2[4];
  const int m = axis_weights(x[0], &f0, w0);
  axis_weights(x[1], &f1, w1);
  axis_weights(x[2], &f2, w2);
  int cnt = 0;
  for (int a = 0; a < m; ++a) {
    const int i = f0 + a;
    if (i < 0 || i >= n_) continue;
    for (int b = 0; b < m; ++b) {
      const int j = f1 + b;
      if (j < 0 || j >= n_) continue;
      const double wab = w0[a] * w1[b];
      const std::size_t base = (static_cast<std::size_t>(i) * n_ + j) * n_;
      for (int c = 0; c < m; ++c) {
        const int k = f2 + c;
        if (k < 0 || k >= n_) continue;
        idx[cnt] = base + k;
        w[cnt] = wab * w2[c];
        ++cnt;
      }
    }
  }
  return cnt;
}

double GridInterpolator::operator()(const Vec3& x) const {
  int f0, f1, f2;
  double w0[4], w1[4], w2[4];
  const int m = axis_weights(x[0], &f0, w0);
  axis_weights(x[1], &f1, w1);
  axis_weights(x[2], &f2, w2);
  // Fast reject: whole stencil outside the lattice.
  if (f0 + m <= 0 || f0 >= n_ || f1 + m <= 0 || f1 >= n_ || f2 + m <= 0 || f2 >= n_) return 0.0;
  double s = 0.0;
  for (int a = 0; a < m; ++a) {
    const int i = f0 + a;
    if (i < 0 || i >= n_) continue;
    for (int b = 0; b < m; ++b) {
      const int j = f1 + b;
      if (j < 0 || j >= n_) continue;
      const double* row = data_ + (static_cast<std::size_t>(i) * n_ + j) * n_;
      double sc = 0.0;
      for (int c = 0; c < m; ++c) {
        const int k = f2 + c;
        if (k < 0 || k >= n_) continue;
        sc += w2[c] * row[k];
      }
      s += w0[a] * w1[b] * sc;
    }
  }
  return s;
}

SmoothSampler::SmoothSampler(const Field& f, int upsample)
    : fine_(spectral_upsample(f, upsample)), interp_(fine_, 3) {}

}  // namespace boltzgap
