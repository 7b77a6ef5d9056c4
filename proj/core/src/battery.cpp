#include "boltzgap/battery.hpp"

#include <cmath>

namespace boltzgap {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double ring_profile(double r, double r_in, double r_out) {
  if (r <= r_in || r >= r_out) return 0.0;
  const double x = (2.0 * r - r_in - r_out) / (r_out - r_in);
  return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

std::vector<BatteryFunction> battery(std::uint64_t seed) {
  std::vector<BatteryFunction> out;
  out.push_back({"sqrt_mu", [](const Vec3& v) { return sqrt_maxwellian_value(v); }});
  out.push_back({"v1_sqrt_mu", [](const Vec3& v) { return v[0] * sqrt_maxwellian_value(v); }});
  out.push_back({"energy_sqrt_mu", [](const Vec3& v) { return (dot3(v, v) - 3.0) * sqrt_maxwellian_value(v); }});
  for (double c : {1.0, 3.0}) {
    // Off-axis centre so that no symmetry of the lattice is shared.
    const Vec3 v0{c * 0.48, c * 0.6, c * 0.64};
    out.push_back({"gauss_" + std::to_string(static_cast<int>(c)), [v0](const Vec3& v) {
                     const Vec3 d{v[0] - v0[0], v[1] - v0[1], v[2] - v0[2]};
                     return std::exp(-dot3(d, d));
                   }});
  }
  // Rings [2^j, 2^{j+1}].
  for (int j : {1, 2}) {
    const double a = std::ldexp(1.0, j);
    out.push_back({"ring_" + std::to_string(j), [a](const Vec3& v) { return ring_profile(norm3(v), a, 2.0 * a); }});
  }
  // Band-limited random field: a few plane waves with |xi| <= 2 under a
  // Gaussian envelope.
  SplitMix64 rng(seed);
  struct Wave {
    Vec3 k;
    double amp, phase;
  };
  std::vector<Wave> waves;
  for (int i = 0; i < 6; ++i) {
    Vec3 k;
    do {
      for (double& x : k) x = rng.uniform(-2.0, 2.0);
    } while (norm3(k) > 2.0);
    waves.push_back({k, rng.uniform(-1.0, 1.0), rng.uniform(0.0, 2.0 * kPi)});
  }
  out.push_back({"random", [waves](const Vec3& v) {
                   double s = 0.0;
                   for (const auto& w : waves) s += w.amp * std::cos(dot3(w.k, v) + w.phase);
                   return std::exp(-0.25 * dot3(v, v)) * s;
                 }});
  return out;
}

Field sample(const BatteryFunction& b, const GridPtr& grid) { return Field::from_function(grid, b.fn); }

}  // namespace boltzgap
