#include "hexlb/ctp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hexlb {

namespace {

constexpr double kWeightP1 = 4.0;
constexpr double kWeightP2 = 2.0;
constexpr double kWeightP3 = 1.0;

}  // namespace

std::array<double, 3> softmax3(double p1, double p2, double p3) {
  for (double v : {p1, p2, p3})
    if (!std::isfinite(v))
      throw std::invalid_argument("softmax3 requires finite inputs");
  const double top = std::max({p1, p2, p3});
  const double e1 = std::exp(p1 - top);
  const double e2 = std::exp(p2 - top);
  const double e3 = std::exp(p3 - top);
  const double sum = e1 + e2 + e3;
  return {e1 / sum, e2 / sum, e3 / sum};
}

double traffic_score(double traffic, double p1_act, double p2_act,
                     double p3_act) {
  if (!(traffic >= 0.0))
    throw std::invalid_argument("traffic must be non-negative");
  if (std::abs(p1_act + p2_act + p3_act - 1.0) > 1e-6)
    throw std::invalid_argument("activated priorities must sum to 1");
  return kWeightP1 * traffic * p1_act + kWeightP2 * traffic * p2_act +
         kWeightP3 * traffic * p3_act;
}

const LstmModel& KindModels::for_kind(SeriesKind kind) const {
  switch (kind) {
    case SeriesKind::traffic: return traffic;
    case SeriesKind::p1: return p1;
    case SeriesKind::p2: return p2;
    case SeriesKind::p3: return p3;
  }
  throw std::invalid_argument("unknown series kind");
}

std::vector<ForecastRow> forecast_rows(const KindModels& models,
                                       const Dataset& dataset, int t) {
  const int window = models.traffic.window;
  if (t < window)
    throw std::invalid_argument("timestep before first full window");

  std::vector<ForecastRow> rows;
  rows.reserve(dataset.microcell_count());
  for (int cell = 0; cell < dataset.microcell_count(); ++cell) {
    auto window_of = [&](SeriesKind kind) {
      const Series& s = dataset.series(cell, kind);
      const LstmModel& m = models.for_kind(kind);
      if (t >= s.length())
        throw std::invalid_argument("timestep beyond series end");
      return std::span<const double>(s.values.data() + (t + 1 - m.window),
                                     static_cast<std::size_t>(m.window));
    };
    ForecastRow row;
    row.microcell = cell;
    row.traffic_hat =
        std::max(0.0, predict_next(models.traffic, window_of(SeriesKind::traffic)));
    const double raw1 = predict_next(models.p1, window_of(SeriesKind::p1));
    const double raw2 = predict_next(models.p2, window_of(SeriesKind::p2));
    const double raw3 = predict_next(models.p3, window_of(SeriesKind::p3));
    const auto act = softmax3(raw1, raw2, raw3);
    row.p1_act = act[0];
    row.p2_act = act[1];
    row.p3_act = act[2];
    row.score = traffic_score(row.traffic_hat, act[0], act[1], act[2]);
    rows.push_back(row);
  }
  return rows;
}

ScoreVector forecast_scores(const KindModels& models, const Dataset& dataset,
                            int t) {
  ScoreVector scores;
  for (const ForecastRow& row : forecast_rows(models, dataset, t))
    scores.push_back(row.score);
  return scores;
}

std::vector<std::vector<double>> training_segments(const Dataset& dataset,
                                                   SeriesKind kind,
                                                   int max_steps) {
  const int train_len = dataset.split.train;
  const int n = dataset.microcell_count();

  // Spread the step budget over all microcells so the pool covers many
  // traffic levels (the default spec cycle then contributes the scenario
  // classes in their 1:1:2 proportion). Segments shorter than kMinSegment
  // yield too few windows, so small budgets use a prefix of the cells
  // instead.
  constexpr int kMinSegment = 16;
  int per_cell = max_steps / n;
  int cells = n;
  if (per_cell < kMinSegment) {
    per_cell = kMinSegment;
    cells = std::min(n, std::max(1, max_steps / kMinSegment));
  }
  per_cell = std::min(per_cell, train_len);
  if (per_cell < 2) return {};

  std::vector<std::vector<double>> segments;
  segments.reserve(cells);
  for (int cell = 0; cell < cells; ++cell) {
    const ScenarioSpec& sc = dataset.specs[cell].traffic;
    int start = 0;
    // center changepoint segments on a transition visible in training
    if (sc.kind == ScenarioKind::changepoint &&
        sc.changepoint_step < train_len)
      start = std::clamp(sc.changepoint_step - per_cell / 2, 0,
                         train_len - per_cell);
    const std::vector<double>& values = dataset.series(cell, kind).values;
    segments.emplace_back(values.begin() + start,
                          values.begin() + start + per_cell);
  }
  return segments;
}

}  // namespace hexlb
