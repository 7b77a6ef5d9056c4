#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "boltzgap/grid.hpp"

namespace boltzgap {

/// Deterministic 64-bit generator (splitmix64) with a portable uniform draw;
/// the standard distributions are implementation defined, this is not.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Smooth radial bump equal to exp(1 - 1/(1 - x^2)) in the middle of
/// [r_in, r_out] (x the rescaled position), zero outside.
double ring_profile(double r, double r_in, double r_out);

struct BatteryFunction {
  std::string id;
  std::function<double(const Vec3&)> fn;
};

/// Test functions shared by the experiments: sqrt(mu), v1 sqrt(mu),
/// (|v|^2 - 3) sqrt(mu), off-center Gaussians at |v0| = 1 and 3, ring bumps
/// at j = 1 and 2, and a seeded band-limited random field.
std::vector<BatteryFunction> battery(std::uint64_t seed = 20240607);

Field sample(const BatteryFunction& b, const GridPtr& grid);

}  // namespace boltzgap
