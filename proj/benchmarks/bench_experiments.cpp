#include <benchmark/benchmark.h>

#include "ebcm/experiments.hpp"

using namespace ebcm::experiments;

namespace {

void BM_MziSweep(benchmark::State& state) {
  auto cfg = default_config(Experiment::mzi);
  cfg.events_per_point = 1000;
  cfg.set("xi", "0");
  for (auto _ : state)
    benchmark::DoNotOptimize(run_mzi(cfg));
  state.SetItemsProcessed(state.iterations() * 21 * 1000);
}
BENCHMARK(BM_MziSweep)->Unit(benchmark::kMillisecond);

void BM_Eprb(benchmark::State& state) {
  auto cfg = default_config(Experiment::eprb);
  cfg.events_per_point = 20000;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_eprb(cfg));
  state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(BM_Eprb)->Unit(benchmark::kMillisecond);

} // namespace
