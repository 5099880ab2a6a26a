#include <benchmark/benchmark.h>

#include <superatom/collective.hpp>

using namespace superatom;

namespace {

const EnsembleGeometry kCloud{10.0, 6.0, 0.1, 6.5, 0.78};

void BM_EmissionPattern(benchmark::State& state) {
  const auto n_atoms = static_cast<std::size_t>(state.range(0));
  const auto sample = sample_cloud(kCloud, n_atoms, 7);
  const auto dirs = angular_grid(91, 36);
  const Eigen::Vector3d k0(0.0, 0.0, 2.0 * 3.141592653589793 / kCloud.lambda_opt);
  for (auto _ : state) {
    auto pattern = directed_emission_pattern(sample, k0, dirs);
    benchmark::DoNotOptimize(pattern.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n_atoms * dirs.size()));
}
BENCHMARK(BM_EmissionPattern)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_SampleCloud(benchmark::State& state) {
  for (auto _ : state) {
    auto s = sample_cloud(kCloud, 2000, 11);
    benchmark::DoNotOptimize(s.positions.data());
  }
}
BENCHMARK(BM_SampleCloud);

}  // namespace
