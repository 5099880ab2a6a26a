#include <benchmark/benchmark.h>

#include <vector>

#include <superatom/three_level.hpp>

using namespace superatom;

namespace {

void BM_EvolveThreeLevel(benchmark::State& state) {
  const ThreeLevelParams p{1.0, 10.0, static_cast<double>(state.range(0)), 0.0, 0.0};
  const double horizon = effective_rabi_period(p);
  std::vector<double> g(401);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = horizon * static_cast<double>(i) / 400.0;
  for (auto _ : state) {
    auto traj = evolve_three_level(p, {}, g);
    benchmark::DoNotOptimize(traj.back().c_r);
  }
}
BENCHMARK(BM_EvolveThreeLevel)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ReductionError(benchmark::State& state) {
  const ThreeLevelParams p{1.0, 10.0, 1000.0, 0.0, 0.0};
  const double horizon = effective_rabi_period(p);
  for (auto _ : state) benchmark::DoNotOptimize(reduction_error(p, horizon));
}
BENCHMARK(BM_ReductionError)->Unit(benchmark::kMicrosecond);

}  // namespace
