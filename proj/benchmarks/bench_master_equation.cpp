#include <benchmark/benchmark.h>

#include <vector>

#include <superatom/applications.hpp>
#include <superatom/master_equation.hpp>

using namespace superatom;

namespace {

std::vector<double> grid(double t_end, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = t_end * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

void BM_EvolveMasterSquare(benchmark::State& state) {
  const double r_in = static_cast<double>(state.range(0));
  const auto g = grid(40.0, 801);
  const auto pulse = DrivePulse::square(r_in, 80.0);
  for (auto _ : state) {
    auto traj = evolve_master({1.0, 0.1, 0.2}, pulse, DensityMatrix3::pure(kG), g);
    benchmark::DoNotOptimize(traj.back().m(1, 1));
  }
}
BENCHMARK(BM_EvolveMasterSquare)->Arg(1)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_EvolveMasterGaussian(benchmark::State& state) {
  const auto g = grid(12.0, 801);
  const auto pulse = DrivePulse::gaussian(4.0, 6.0, 1.0);
  for (auto _ : state) {
    auto traj = evolve_master({1.0, 0.16, 10.0}, pulse, DensityMatrix3::pure(kG), g);
    benchmark::DoNotOptimize(traj.back().m(1, 1));
  }
}
BENCHMARK(BM_EvolveMasterGaussian)->Unit(benchmark::kMillisecond);

void BM_SteadyState(benchmark::State& state) {
  for (auto _ : state) {
    auto rho = steady_state({1.0, 0.1, 0.3}, {1.5, 0.0});
    benchmark::DoNotOptimize(rho.m(1, 1));
  }
}
BENCHMARK(BM_SteadyState);

void BM_Subtractor(benchmark::State& state) {
  const auto pulse = DrivePulse::gaussian(2.0, 5.0, 5.0 / 6.0);
  SubtractorOptions opts;
  opts.compute_g2 = state.range(0) != 0;
  for (auto _ : state) {
    auto run = run_subtractor({1.0, 0.16, 10.0}, pulse, opts);
    benchmark::DoNotOptimize(run.output_photons);
  }
}
BENCHMARK(BM_Subtractor)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
