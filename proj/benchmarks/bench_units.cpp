#include <benchmark/benchmark.h>

#include "ebcm/dlm.hpp"
#include "ebcm/units.hpp"

using namespace ebcm;

namespace {

void BM_ScalarDlm(benchmark::State& state) {
  dlm::ScalarDlm m(0.5, 0.99);
  double y = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.update(y));
    y = y > 0.9 ? 0.1 : y + 0.001;
  }
}
BENCHMARK(BM_ScalarDlm);

void BM_Propagate(benchmark::State& state) {
  auto m = Message::polarized(0.3, 0.1, 0.2);
  for (auto _ : state) {
    m = propagate(m, 0.37);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_Propagate);

void BM_InterfaceUnit(benchmark::State& state) {
  auto u = make_interface_unit(0.6, 1.0, 1.52);
  Rng rng(1);
  const auto msg = Message::polarized(0.4);
  for (auto _ : state)
    benchmark::DoNotOptimize(u.process(0, msg, rng));
}
BENCHMARK(BM_InterfaceUnit);

/// Detector cost grows with the port count through T = sum_k x_k Y_k.
void BM_Detector(benchmark::State& state) {
  DetectorUnit d(PortMapper{static_cast<int>(state.range(0)), 1.0});
  Rng rng(2);
  const auto msg = Message::polarized(0.2);
  double dir = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(d.process(msg, dir, 0.0, rng));
    dir = dir > 0.99 ? -1.0 : dir + 0.01;
  }
}
BENCHMARK(BM_Detector)->Arg(1)->Arg(2)->Arg(500);

} // namespace
