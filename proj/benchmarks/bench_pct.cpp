#include <benchmark/benchmark.h>

#include "hexlb/hexgrid.hpp"
#include "hexlb/pct.hpp"
#include "hexlb/rng.hpp"

namespace {

hexlb::ScoreVector random_scores(const hexlb::HexLayout& layout,
                                 std::uint64_t seed) {
  hexlb::SplitMix64 rng(seed);
  hexlb::ScoreVector scores(layout.triangle_count());
  for (double& s : scores) s = rng.next_uniform(40.0, 80.0);
  return scores;
}

void BM_BalanceWnl1(benchmark::State& state) {
  const auto layout = hexlb::preset_wnl1();
  const auto scores = random_scores(layout, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(hexlb::balance(scores, layout));
}
BENCHMARK(BM_BalanceWnl1);

void BM_BalanceWnl2(benchmark::State& state) {
  const auto layout = hexlb::preset_wnl2();
  const auto scores = random_scores(layout, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(hexlb::balance(scores, layout));
}
BENCHMARK(BM_BalanceWnl2);

void BM_BalanceWnl2SecondRing(benchmark::State& state) {
  const auto layout = hexlb::preset_wnl2();
  const auto scores = random_scores(layout, 7);
  hexlb::BalanceOptions options;
  options.include_second_ring = true;
  for (auto _ : state)
    benchmark::DoNotOptimize(hexlb::balance(scores, layout, options));
}
BENCHMARK(BM_BalanceWnl2SecondRing);

// Exponential in the candidate count; documents where the guard bites.
void BM_BestSubset(benchmark::State& state) {
  const auto layout = hexlb::preset_wnl2();
  const int k = static_cast<int>(state.range(0));
  hexlb::SplitMix64 rng(11);
  hexlb::ScoreVector scores(layout.triangle_count(), 0.0);
  std::vector<hexlb::TriangleId> candidates;
  for (int u = 0; u < k; ++u) {
    const hexlb::TriangleId t{1 + u % 6, u / 6 * 4 + 1};
    candidates.push_back(t);
    scores[layout.global_index(t)] = rng.next_uniform(40.0, 80.0);
  }
  std::vector<double> totals(layout.hex_count(), 2000.0);
  totals[0] = 100.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        hexlb::best_subset(candidates, 0, totals, 1200.0, scores, 32));
}
BENCHMARK(BM_BestSubset)->DenseRange(4, 20, 4);

}  // namespace
