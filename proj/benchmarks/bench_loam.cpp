// Microbenchmarks for the paths that dominate real runs: the ANOVA
// decomposition (bootstrap inner loop), dataset simulation, quantile
// evaluation, and a full bootstrap comparison.
#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "loam/anova.hpp"
#include "loam/bootstrap.hpp"
#include "loam/quantiles.hpp"
#include "loam/rng.hpp"
#include "loam/simulate.hpp"

namespace {

loam::MeasurementGrid simulated(int a, int b, int c, std::uint64_t seed) {
  const loam::ModelParams params{10.0, 1.5, 0.8, 0.4, 0.6};
  return loam::simulate(params, loam::Design{a, b, c}, seed);
}

void DecomposeValues(benchmark::State& state) {
  const int a = static_cast<int>(state.range(0));
  const int b = static_cast<int>(state.range(1));
  const int c = static_cast<int>(state.range(2));
  const auto grid = simulated(a, b, c, 7);
  const std::vector<double> values(grid.values().begin(), grid.values().end());
  const loam::Design design{a, b, c};
  for (auto _ : state) {
    const auto anova = loam::decompose_values(values, design);
    benchmark::DoNotOptimize(anova.ss_e);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(values.size()));
}

void Simulate(benchmark::State& state) {
  const loam::ModelParams params{10.0, 1.5, 0.8, 0.4, 0.6};
  const loam::Design design{static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                            static_cast<int>(state.range(2))};
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const auto grid = loam::simulate(params, design, seed++);
    benchmark::DoNotOptimize(grid.grand_mean());
  }
}

void ChisqQuantile(benchmark::State& state) {
  const double nu = static_cast<double>(state.range(0));
  double p = 0.0001;
  for (auto _ : state) {
    p += 0.001;
    if (p >= 1.0) p -= 0.999;
    benchmark::DoNotOptimize(loam::chisq_quantile(p, nu));
  }
}

void NormalQuantile(benchmark::State& state) {
  double p = 0.0001;
  for (auto _ : state) {
    p += 0.001;
    if (p >= 1.0) p -= 0.999;
    benchmark::DoNotOptimize(loam::normal_quantile(p));
  }
}

void BootstrapCompare(benchmark::State& state) {
  const int resamples = static_cast<int>(state.range(0));
  loam::PairedStudy study(simulated(20, 3, 2, 11), simulated(20, 3, 2, 12));
  for (auto _ : state) {
    const auto result =
        loam::bootstrap_compare(study, loam::LoamKind::reproducibility, resamples, 99, 1.96, 1);
    benchmark::DoNotOptimize(result.p_value);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(resamples));
}

}  // namespace

BENCHMARK(DecomposeValues)->Args({15, 4, 3})->Args({50, 4, 2})->Args({100, 10, 3});
BENCHMARK(Simulate)->Args({15, 4, 3})->Args({100, 10, 3});
BENCHMARK(ChisqQuantile)->Arg(3)->Arg(42)->Arg(594);
BENCHMARK(NormalQuantile);
BENCHMARK(BootstrapCompare)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
