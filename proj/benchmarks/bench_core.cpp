#include <benchmark/benchmark.h>

#include <cmath>
#include <map>
#include <memory>

#include "boltzgap/direct.hpp"
#include "boltzgap/fourier.hpp"
#include "boltzgap/kernel.hpp"
#include "boltzgap/odemodel.hpp"
#include "boltzgap/rotational.hpp"
#include "boltzgap/spectral.hpp"

using namespace boltzgap;

namespace {

double bump(const Vec3& v) { return (1.0 + 0.3 * v[0]) * std::exp(-0.5 * dot3(v, v)); }

void BM_ForwardFFT(benchmark::State& st) {
  const auto g = make_grid(static_cast<int>(st.range(0)), 8.0);
  const Field f = Field::from_function(g, bump);
  const FourierTransform ft(g);
  for (auto _ : st) benchmark::DoNotOptimize(ft.forward(f));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(g->size()));
}
BENCHMARK(BM_ForwardFFT)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_AngularRule(benchmark::State& st) {
  KernelConfig k;
  k.eps = std::ldexp(1.0, -static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(angular_quadrature(k));
}
BENCHMARK(BM_AngularRule)->DenseRange(3, 9, 3);

void BM_SpecialOde(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(integrate_special(1e-3, 0.5, 10.0, 1e-3));
}
BENCHMARK(BM_SpecialOde)->Unit(benchmark::kMillisecond);

// Engine construction dominates; apply is a few small dense products per degree.
void BM_EngineApply(benchmark::State& st) {
  KernelConfig k;
  k.eps = 0.125;
  auto rad = std::make_shared<RadialDiscretization>(uniform_breakpoints(10.0, 0.5));
  const int l_max = static_cast<int>(st.range(0));
  static std::map<int, std::unique_ptr<RotationalOperator>> cache;
  auto& op = cache[l_max];
  if (!op) op = std::make_unique<RotationalOperator>(k, rad, l_max);
  const SpectralField f = analyze_function(bump, op->radial(), l_max);
  for (auto _ : st) benchmark::DoNotOptimize(op->apply(f));
}
BENCHMARK(BM_EngineApply)->Arg(2)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_EngineBuild(benchmark::State& st) {
  KernelConfig k;
  k.eps = 0.125;
  auto rad = std::make_shared<RadialDiscretization>(uniform_breakpoints(10.0, 0.5));
  for (auto _ : st) benchmark::DoNotOptimize(RotationalOperator(k, rad, 0));
}
BENCHMARK(BM_EngineBuild)->Unit(benchmark::kSecond)->Iterations(1);

void BM_DirectQ_n8(benchmark::State& st) {
  const auto g = make_grid(8, 4.0);
  KernelConfig k;
  k.eps = 0.25;
  const CollisionWorkspace ws(g, k, 1);
  const Field f = Field::from_function(g, bump);
  for (auto _ : st) benchmark::DoNotOptimize(Q_eps(f, f, ws));
}
BENCHMARK(BM_DirectQ_n8)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
