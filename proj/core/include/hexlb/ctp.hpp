#pragma once

#include <array>
#include <vector>

#include "hexlb/lstm.hpp"
#include "hexlb/trafficgen.hpp"

namespace hexlb {

/// One non-negative traffic score per microcell, in global triangle order
/// (hex * 24 + local).
using ScoreVector = std::vector<double>;

/// Normalizes three raw priority predictions onto the simplex:
/// out_k = exp(p_k) / sum_j exp(p_j). Outputs are positive, sum to 1,
/// preserve the input ordering and are invariant under a common shift.
std::array<double, 3> softmax3(double p1, double p2, double p3);

/// Priority-weighted load of one microcell:
///   S = 4*T*p1 + 2*T*p2 + T*p3
/// so S always lies in [T, 4T] for priorities on the simplex.
double traffic_score(double traffic, double p1_act, double p2_act,
                     double p3_act);

/// The four per-quantity forecasters, shared across microcells.
struct KindModels {
  LstmModel traffic, p1, p2, p3;

  const LstmModel& for_kind(SeriesKind kind) const;
};

struct ForecastRow {
  int microcell = 0;
  double traffic_hat = 0.0;
  double p1_act = 0.0, p2_act = 0.0, p3_act = 0.0;
  double score = 0.0;
};

/// Per-microcell next-day forecast at timestep t: predicts T, P1, P2, P3
/// for t + 1 from the windows ending at t, activates the priorities with
/// softmax3, clamps predicted traffic at 0 and forms the traffic score.
/// Requires t >= window length.
std::vector<ForecastRow> forecast_rows(const KindModels& models,
                                       const Dataset& dataset, int t);

ScoreVector forecast_scores(const KindModels& models, const Dataset& dataset,
                            int t);

/// Deterministic training pool for one kind: up to two exemplar microcells
/// per scenario class present in the dataset, with the step budget
/// (max_steps, default 2800) split 1:1:2 between flat, weekly and
/// changepoint classes. Changepoint segments are centered on a changepoint
/// that falls inside the training range when one exists. Returns segments
/// of raw values; windows are later formed within segments only.
std::vector<std::vector<double>> training_segments(const Dataset& dataset,
                                                   SeriesKind kind,
                                                   int max_steps = 2800);

}  // namespace hexlb
