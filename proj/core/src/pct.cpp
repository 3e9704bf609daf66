#include "hexlb/pct.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace hexlb {

Assignment Assignment::identity(const HexLayout& layout) {
  Assignment a;
  a.serving.resize(layout.triangle_count());
  for (int g = 0; g < layout.triangle_count(); ++g)
    a.serving[g] = g / kTrianglesPerHex;
  return a;
}

std::vector<double> hex_traffic(const ScoreVector& scores,
                                const HexLayout& layout,
                                const Assignment& assignment) {
  if (static_cast<int>(scores.size()) != layout.triangle_count())
    throw std::invalid_argument("score vector length does not match layout");
  if (assignment.serving.size() != scores.size())
    throw std::invalid_argument("assignment length does not match layout");
  std::vector<double> totals(layout.hex_count(), 0.0);
  for (std::size_t g = 0; g < scores.size(); ++g)
    totals[assignment.serving[g]] += scores[g];
  return totals;
}

double average_score(const ScoreVector& scores, int hex_count) {
  if (hex_count < 1) throw std::invalid_argument("hexagon count must be >= 1");
  const double total = std::accumulate(scores.begin(), scores.end(), 0.0);
  return total / hex_count;
}

std::vector<TriangleId> get_addable(const HexLayout& layout, int receiver,
                                    const std::vector<Transfer>& added,
                                    const Assignment& assignment,
                                    bool include_second_ring) {
  std::unordered_set<int> logged;
  for (const Transfer& tr : added)
    logged.insert(layout.global_index(tr.triangle));

  std::vector<TriangleId> candidates;
  for (TriangleId t : scopes(layout, receiver, include_second_ring).scope1) {
    const int g = layout.global_index(t);
    if (logged.contains(g)) continue;
    if (assignment.serving[g] != t.hex) continue;  // already traded away
    candidates.push_back(t);
  }
  std::sort(candidates.begin(), candidates.end());
  return candidates;
}

namespace {

// Depth-first include/exclude search over the candidate list. Feasibility
// is checked incrementally: an inclusion must keep the receiver at or
// below avg and its donor at or above avg.
struct SubsetSearch {
  std::span<const TriangleId> candidates;
  std::span<const double> candidate_scores;
  double avg = 0.0;

  std::vector<double>* donor_totals = nullptr;  // indexed by hexagon
  double receiver_total = 0.0;
  std::vector<int> chosen;

  double best_total = 0.0;
  std::vector<int> best_chosen;
  bool have_best = false;

  void consider_leaf() {
    if (!have_best || receiver_total > best_total) {
      best_total = receiver_total;
      best_chosen = chosen;
      have_best = true;
      return;
    }
    if (receiver_total == best_total) {
      if (chosen.size() < best_chosen.size() ||
          (chosen.size() == best_chosen.size() &&
           std::lexicographical_compare(chosen.begin(), chosen.end(),
                                        best_chosen.begin(),
                                        best_chosen.end())))
        best_chosen = chosen;
    }
  }

  void run(std::size_t u) {
    if (u == candidates.size()) {
      consider_leaf();
      return;
    }
    const double s = candidate_scores[u];
    const int donor = candidates[u].hex;
    // include branch first: candidate-index order keeps ties lexicographic
    if (receiver_total + s <= avg && (*donor_totals)[donor] - s >= avg) {
      const double saved_receiver = receiver_total;
      const double saved_donor = (*donor_totals)[donor];
      receiver_total += s;
      (*donor_totals)[donor] -= s;
      chosen.push_back(static_cast<int>(u));
      run(u + 1);
      chosen.pop_back();
      (*donor_totals)[donor] = saved_donor;
      receiver_total = saved_receiver;
    }
    run(u + 1);
  }
};

}  // namespace

SubsetChoice best_subset(std::span<const TriangleId> candidates, int receiver,
                         const std::vector<double>& totals, double avg,
                         const ScoreVector& scores, int max_candidates) {
  if (static_cast<int>(candidates.size()) > max_candidates)
    throw std::invalid_argument(
        "candidate set of " + std::to_string(candidates.size()) +
        " exceeds the search guard of " + std::to_string(max_candidates) +
        "; disable the second ring or split the layout");

  SubsetChoice result;
  result.totals = totals;
  if (candidates.empty()) return result;

  std::vector<double> candidate_scores(candidates.size());
  for (std::size_t u = 0; u < candidates.size(); ++u) {
    if (candidates[u].hex == receiver)
      throw std::invalid_argument("candidate already belongs to the receiver");
    candidate_scores[u] =
        scores[candidates[u].hex * kTrianglesPerHex + candidates[u].local];
  }

  SubsetSearch search;
  search.candidates = candidates;
  search.candidate_scores = candidate_scores;
  search.avg = avg;
  search.donor_totals = &result.totals;
  search.receiver_total = totals[receiver];
  search.run(0);

  for (int u : search.best_chosen) {
    const TriangleId t = candidates[u];
    result.chosen.push_back(t);
    result.totals[t.hex] -= candidate_scores[u];
  }
  result.totals[receiver] = search.best_total;
  return result;
}

BalanceResult balance(const ScoreVector& scores, const HexLayout& layout,
                      const BalanceOptions& options) {
  if (static_cast<int>(scores.size()) != layout.triangle_count())
    throw std::invalid_argument("score vector length does not match layout");
  for (double s : scores)
    if (!std::isfinite(s) || s < 0.0)
      throw std::invalid_argument("scores must be finite and non-negative");

  BalanceResult result;
  result.assignment = Assignment::identity(layout);
  result.totals_before = hex_traffic(scores, layout, result.assignment);
  result.avg_score = average_score(scores, layout.hex_count());
  result.totals_by_iteration.push_back(result.totals_before);

  std::vector<int> order(layout.hex_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return result.totals_before[a] < result.totals_before[b];
  });

  std::vector<double> totals = result.totals_before;
  for (int receiver : order) {
    const auto candidates =
        get_addable(layout, receiver, result.transfers, result.assignment,
                    options.include_second_ring);
    SubsetChoice choice = best_subset(candidates, receiver, totals,
                                      result.avg_score, scores,
                                      options.max_candidates);
    totals = std::move(choice.totals);
    ++result.iterations;
    for (TriangleId t : choice.chosen) {
      const int g = layout.global_index(t);
      result.assignment.serving[g] = receiver;
      result.transfers.push_back(
          {t, t.hex, receiver, scores[g], result.iterations});
    }
    result.totals_by_iteration.push_back(totals);
  }
  result.totals_after = std::move(totals);
  return result;
}

}  // namespace hexlb
