#include <benchmark/benchmark.h>

#include "omni/oracle.hpp"
#include "omni/season.hpp"
#include "omni/strategy.hpp"

using namespace omni;

namespace {

const ModelParams kCase1 = reference_case(1);

void BM_SelectStrategy(benchmark::State& state) {
  int i = 0;
  for (auto _ : state) {
    i = i % 1000 + 1;
    benchmark::DoNotOptimize(select_strategy(kCase1, Theta(i / 1000.0)));
  }
}
BENCHMARK(BM_SelectStrategy);

void BM_Thresholds(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(thresholds(kCase1));
}
BENCHMARK(BM_Thresholds);

void BM_IntegrateDemand(benchmark::State& state) {
  oracle::OracleConfig cfg;
  cfg.d_resolution = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::integrate_demand(kCase1, Theta(0.8), {1.0, 0.6}, true, cfg));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IntegrateDemand)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

void BM_CountDemand(benchmark::State& state) {
  oracle::OracleConfig cfg;
  cfg.d_resolution = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::count_demand(kCase1, Theta(0.8), {1.0, 0.6}, true, cfg));
  }
}
BENCHMARK(BM_CountDemand)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_GridSweep(benchmark::State& state) {
  oracle::OracleConfig cfg;
  cfg.p_resolution = static_cast<std::size_t>(state.range(0));
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(oracle::grid_sweep(kCase1, Theta(0.9), true, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_GridSweep)->Arg(201)->Arg(501)->Unit(benchmark::kMillisecond);

void BM_SimulateSeason(benchmark::State& state) {
  SeasonConfig cfg;
  for (auto _ : state) {
    ++cfg.seed;
    benchmark::DoNotOptimize(simulate_season(cfg));
  }
}
BENCHMARK(BM_SimulateSeason);

void BM_MonteCarlo(benchmark::State& state) {
  SeasonConfig cfg;
  cfg.seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(monte_carlo(cfg, static_cast<std::size_t>(state.range(0)), 1));
  }
}
BENCHMARK(BM_MonteCarlo)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
