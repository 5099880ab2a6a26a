#include <benchmark/benchmark.h>

#include <vector>

#include <superatom/correlations.hpp>

using namespace superatom;

namespace {

std::vector<double> grid(std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = 3.0 * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

const PhysicalRates kRates{1.0, 0.1628, 3.185};

void BM_G2(benchmark::State& state) {
  const auto s = grid(static_cast<std::size_t>(state.range(0)));
  const auto pulse = DrivePulse::square(12.4, 2.0);
  CorrelationOptions o;
  o.threads = 1;
  for (auto _ : state) {
    auto c = g2(kRates, pulse, s, o);
    benchmark::DoNotOptimize(c.values.data());
  }
}
BENCHMARK(BM_G2)->Arg(21)->Arg(61)->Unit(benchmark::kMillisecond);

void BM_G3(benchmark::State& state) {
  const auto s = grid(static_cast<std::size_t>(state.range(0)));
  const auto pulse = DrivePulse::square(6.7, 2.0);
  CorrelationOptions o;
  o.threads = 1;
  for (auto _ : state) {
    auto c = g3(kRates, pulse, s, o);
    benchmark::DoNotOptimize(c.values.data());
  }
}
BENCHMARK(BM_G3)->Arg(11)->Arg(21)->Unit(benchmark::kMillisecond);

}  // namespace
