#include <benchmark/benchmark.h>

#include <superatom/phase_diagram.hpp>

using namespace superatom;

namespace {

void BM_VisibilityAt(benchmark::State& state) {
  const double lambda = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto p = visibility_at(lambda, 10.0);
    benchmark::DoNotOptimize(p.visibility);
  }
}
BENCHMARK(BM_VisibilityAt)->Arg(1)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_Sweep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto axes = GridAxes::log_spaced(0.01, 1000.0, n, 0.01, 1000.0, n);
  for (auto _ : state) {
    auto grid = sweep(axes, PhysicalRates{}, VisibilityOptions{}, 1);
    benchmark::DoNotOptimize(grid.points.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n));
}
BENCHMARK(BM_Sweep)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
