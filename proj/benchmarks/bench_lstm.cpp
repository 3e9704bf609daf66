#include <benchmark/benchmark.h>

#include "hexlb/lstm.hpp"
#include "hexlb/rng.hpp"
#include "hexlb/trafficgen.hpp"

namespace {

void BM_CellForward(benchmark::State& state) {
  const int hidden = static_cast<int>(state.range(0));
  const auto m = hexlb::init_model(hidden, 7, 3);
  const auto prev = hexlb::LstmState::zero(hidden);
  for (auto _ : state)
    benchmark::DoNotOptimize(hexlb::lstm_cell_forward(m, 0.5, prev));
}
BENCHMARK(BM_CellForward)->Arg(8)->Arg(32)->Arg(64);

void BM_WindowGradients(benchmark::State& state) {
  const int hidden = static_cast<int>(state.range(0));
  const auto m = hexlb::init_model(hidden, 7, 3);
  hexlb::SplitMix64 rng(5);
  std::vector<double> window(7);
  for (double& v : window) v = rng.next_unit();
  for (auto _ : state)
    benchmark::DoNotOptimize(hexlb::lstm_gradients(m, window, 0.4));
}
BENCHMARK(BM_WindowGradients)->Arg(8)->Arg(32)->Arg(64);

void BM_TrainEpoch(benchmark::State& state) {
  hexlb::ScenarioSpec spec;
  spec.kind = hexlb::ScenarioKind::weekly;
  spec.base = 60.0;
  spec.seed = 17;
  const hexlb::Series series = hexlb::gen_traffic(spec, 700);
  hexlb::TrainConfig cfg;
  cfg.epochs = 1;
  cfg.hidden = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hexlb::train(series, cfg));
}
BENCHMARK(BM_TrainEpoch)->Unit(benchmark::kMillisecond)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
