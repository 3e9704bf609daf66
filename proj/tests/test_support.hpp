#pragma once

// Shared test helpers, including the exhaustive subset-selection oracle the
// balancer is checked against. Everything here stays independent of the
// search implementation under test.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "hexlb/ctp.hpp"
#include "hexlb/hexgrid.hpp"
#include "hexlb/rng.hpp"

namespace hexlb::test {

inline ScoreVector random_scores(const HexLayout& layout, std::uint64_t seed,
                                 double lo = 40.0, double hi = 80.0) {
  SplitMix64 rng(seed);
  ScoreVector scores(layout.triangle_count());
  for (double& s : scores) s = rng.next_uniform(lo, hi);
  return scores;
}

struct OracleResult {
  double receiver_total = 0.0;
  std::vector<int> chosen;  // candidate indices, ascending
};

/// Enumerates every one of the 2^k candidate subsets, applies the two
/// feasibility constraints against fresh totals, and keeps the best
/// receiver total (ties: fewer triangles, then lexicographically smallest
/// index sequence).
inline OracleResult exhaustive_best_subset(
    std::span<const TriangleId> candidates, int receiver,
    const std::vector<double>& totals, double avg, const ScoreVector& scores) {
  const int k = static_cast<int>(candidates.size());
  OracleResult best;
  best.receiver_total = totals[receiver];
  bool have = false;

  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::vector<double> t = totals;
    std::vector<int> chosen;
    bool feasible = true;
    double receiver_total = totals[receiver];
    for (int u = 0; u < k && feasible; ++u) {
      if (!(mask & (1u << u))) continue;
      const double s =
          scores[candidates[u].hex * kTrianglesPerHex + candidates[u].local];
      receiver_total += s;
      t[candidates[u].hex] -= s;
      if (receiver_total > avg || t[candidates[u].hex] < avg) feasible = false;
      chosen.push_back(u);
    }
    if (!feasible) continue;
    if (!have || receiver_total > best.receiver_total ||
        (receiver_total == best.receiver_total &&
         (chosen.size() < best.chosen.size() ||
          (chosen.size() == best.chosen.size() &&
           std::lexicographical_compare(chosen.begin(), chosen.end(),
                                        best.chosen.begin(),
                                        best.chosen.end()))))) {
      best.receiver_total = receiver_total;
      best.chosen = chosen;
      have = true;
    }
  }
  return best;
}

}  // namespace hexlb::test
