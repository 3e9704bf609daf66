#pragma once

#include <span>
#include <vector>

#include "hexlb/ctp.hpp"
#include "hexlb/hexgrid.hpp"

namespace hexlb {

/// Triangle -> serving base station map. Always a partition: every triangle
/// of the layout is served by exactly one hexagon.
struct Assignment {
  std::vector<int> serving;  // indexed by global triangle index

  static Assignment identity(const HexLayout& layout);

  int server(const HexLayout& layout, TriangleId t) const {
    return serving[layout.global_index(t)];
  }
};

struct Transfer {
  TriangleId triangle;
  int from = 0;
  int to = 0;
  double score = 0.0;
  int iteration = 0;  // main-loop step that committed it
};

struct BalanceResult {
  double avg_score = 0.0;
  std::vector<double> totals_before;
  std::vector<double> totals_after;
  std::vector<Transfer> transfers;
  int iterations = 0;
  Assignment assignment;
  /// Per-hexagon totals snapshot after each main-loop step; entry 0 is the
  /// initial state.
  std::vector<std::vector<double>> totals_by_iteration;
};

struct BalanceOptions {
  bool include_second_ring = false;
  int max_candidates = 32;
};

/// totals[b] = sum of scores of the triangles currently served by b.
std::vector<double> hex_traffic(const ScoreVector& scores,
                                const HexLayout& layout,
                                const Assignment& assignment);

/// Average traffic score per base station: sum of all microcell scores
/// divided by the hexagon count.
double average_score(const ScoreVector& scores, int hex_count);

/// Ordered candidate triangles the receiver may take over: its scope-1 set
/// minus triangles already in the transfer log and minus triangles no
/// longer served by their home hexagon. Ordered by donor index, then local
/// index.
std::vector<TriangleId> get_addable(const HexLayout& layout, int receiver,
                                    const std::vector<Transfer>& added,
                                    const Assignment& assignment,
                                    bool include_second_ring = false);

struct SubsetChoice {
  std::vector<TriangleId> chosen;
  std::vector<double> totals;  // updated for receiver and donors
};

/// Backtracking search over all subsets of `candidates` subject to
///   (a) the receiver's total after additions stays <= avg, and
///   (b) each donor's total after its removals stays >= avg,
/// returning a subset maximizing the receiver's final total. Ties prefer
/// fewer triangles, then the lexicographically smallest candidate-index
/// sequence. Throws std::invalid_argument when candidates exceed
/// max_candidates.
SubsetChoice best_subset(std::span<const TriangleId> candidates, int receiver,
                         const std::vector<double>& totals, double avg,
                         const ScoreVector& scores, int max_candidates = 32);

/// Single-pass exchange: hexagons are processed once, in ascending order of
/// their initial totals, each taking the best feasible subset of its
/// scope-1 triangles. The average is computed once up front; transfers
/// conserve the total so it never changes. Deterministic.
BalanceResult balance(const ScoreVector& scores, const HexLayout& layout,
                      const BalanceOptions& options = {});

}  // namespace hexlb
