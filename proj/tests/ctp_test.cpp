#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hexlb/ctp.hpp"
#include "hexlb/rng.hpp"

using namespace hexlb;

TEST_CASE("softmax3 of equal inputs is uniform") {
  for (double x : {-4.0, 0.0, 0.5, 1000.0}) {
    const auto out = softmax3(x, x, x);
    for (double v : out) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-12));
  }
}

TEST_CASE("softmax3 frozen value") {
  const auto out = softmax3(0.5, 0.3, 0.2);
  CHECK(out[0] == doctest::Approx(0.390693833).epsilon(1e-8));
  CHECK(out[1] == doctest::Approx(0.319873056).epsilon(1e-8));
  CHECK(out[2] == doctest::Approx(0.289433110).epsilon(1e-8));
}

TEST_CASE("softmax3 saturates for a dominant input") {
  const auto out = softmax3(10.0, 0.0, 0.0);
  CHECK(out[0] > 0.9999);
  CHECK(out[0] + out[1] + out[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("softmax3 properties over random triples") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 10000; ++trial) {
    const double a = rng.next_uniform(-10, 10);
    const double b = rng.next_uniform(-10, 10);
    const double c = rng.next_uniform(-10, 10);
    const auto out = softmax3(a, b, c);

    CHECK(std::abs(out[0] + out[1] + out[2] - 1.0) <= 1e-9);
    for (double v : out) CHECK(v > 0.0);
    // order preserving
    CHECK(((a < b) == (out[0] < out[1]) || a == b));
    CHECK(((b < c) == (out[1] < out[2]) || b == c));
    // invariant under a common shift
    const double shift = rng.next_uniform(-5, 5);
    const auto shifted = softmax3(a + shift, b + shift, c + shift);
    for (int k = 0; k < 3; ++k)
      CHECK(shifted[k] == doctest::Approx(out[k]).epsilon(1e-9));
  }
}

TEST_CASE("softmax3 rejects non-finite input") {
  CHECK_THROWS_AS(softmax3(std::nan(""), 0, 0), std::invalid_argument);
}

TEST_CASE("traffic score boundary cases") {
  CHECK(traffic_score(0.0, 0.5, 0.3, 0.2) == 0.0);
  CHECK(traffic_score(100.0, 1.0, 0.0, 0.0) == 400.0);
  CHECK(traffic_score(100.0, 0.0, 0.0, 1.0) == 100.0);
  CHECK(traffic_score(100.0, 0.5, 0.3, 0.2) == doctest::Approx(280.0));
}

TEST_CASE("traffic score envelope and monotonicity") {
  SplitMix64 rng(321);
  for (int trial = 0; trial < 10000; ++trial) {
    const double t = rng.next_uniform(0, 500);
    const auto p = softmax3(rng.next_uniform(-2, 2), rng.next_uniform(-2, 2),
                            rng.next_uniform(-2, 2));
    const double s = traffic_score(t, p[0], p[1], p[2]);
    CHECK(s >= t - 1e-9);
    CHECK(s <= 4 * t + 1e-9);
    // linear in t at fixed priorities
    CHECK(traffic_score(2 * t, p[0], p[1], p[2]) ==
          doctest::Approx(2 * s).epsilon(1e-12));
    // moving mass from p3 to p1 increases the score
    const double shift = p[2] * 0.5;
    if (t > 0)
      CHECK(traffic_score(t, p[0] + shift, p[1], p[2] - shift) > s);
  }
}

TEST_CASE("traffic score precondition checks") {
  CHECK_THROWS_AS(traffic_score(-1.0, 0.5, 0.3, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(traffic_score(10.0, 0.5, 0.3, 0.3), std::invalid_argument);
}

namespace {

// Dataset where every microcell carries the same constant series.
Dataset constant_dataset(const HexLayout& layout, double base,
                         const SplitSpec& split) {
  std::vector<MicrocellSpec> specs;
  for (int i = 0; i < layout.triangle_count(); ++i) {
    MicrocellSpec s;
    s.traffic.kind = ScenarioKind::flat;
    s.traffic.base = base;
    s.traffic.noise_sigma = 0.0;
    s.priorities.base = {0.5, 0.3, 0.2};
    s.priorities.sigma = 0.0;
    specs.push_back(s);
  }
  return build_dataset(layout, "wnl1", specs, split, 1);
}

}  // namespace

TEST_CASE("forecast on an all-constant dataset") {
  const HexLayout layout = preset_wnl1();
  const SplitSpec split{60, 10};
  const Dataset ds = constant_dataset(layout, 50.0, split);

  TrainConfig cfg;
  cfg.epochs = 2;
  cfg.hidden = 6;
  cfg.seed = 4;
  KindModels models{
      train(training_segments(ds, SeriesKind::traffic), cfg),
      train(training_segments(ds, SeriesKind::p1), cfg),
      train(training_segments(ds, SeriesKind::p2), cfg),
      train(training_segments(ds, SeriesKind::p3), cfg)};

  const ScoreVector scores = forecast_scores(models, ds, split.length() - 1);
  REQUIRE(static_cast<int>(scores.size()) == layout.triangle_count());

  const double lo = *std::min_element(scores.begin(), scores.end());
  const double hi = *std::max_element(scores.begin(), scores.end());
  CHECK(hi - lo <= 0.02 * hi);  // all scores equal within 2%

  // every score within the [T, 4T] envelope of its own prediction
  const auto rows = forecast_rows(models, ds, split.length() - 1);
  for (const ForecastRow& row : rows) {
    CHECK(row.score >= row.traffic_hat - 1e-9);
    CHECK(row.score <= 4 * row.traffic_hat + 1e-9);
    CHECK(row.p1_act + row.p2_act + row.p3_act ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("forecast rejects an early timestep") {
  const HexLayout layout = preset_wnl1();
  const Dataset ds = constant_dataset(layout, 50.0, {60, 10});
  KindModels models{init_model(4, 7, 1), init_model(4, 7, 2),
                    init_model(4, 7, 3), init_model(4, 7, 4)};
  models.traffic.scaler = {0, 100, false};
  CHECK_THROWS_AS(forecast_scores(models, ds, 3), std::invalid_argument);
  CHECK_THROWS_AS(forecast_scores(models, ds, 70), std::invalid_argument);
}

TEST_CASE("training segments pool every microcell in the 1:1:2 mixture") {
  const HexLayout layout = preset_wnl1();
  const SplitSpec split;  // 2800/77
  const Dataset ds = build_dataset(layout, "wnl1",
                                   default_specs(layout, 5, split), split, 5);
  const auto segments = training_segments(ds, SeriesKind::traffic);

  // one equal-length segment per microcell, budget 2800 steps
  REQUIRE(segments.size() == 72);
  int total = 0;
  for (const auto& seg : segments) {
    CHECK(seg.size() == 2800 / 72);
    total += static_cast<int>(seg.size());
  }
  CHECK(total <= 2800);
  CHECK(total >= 2800 - 72);

  // step shares by scenario class follow the 18/18/36 cell mixture, i.e.
  // the 700:700:1400 composition
  int flat_steps = 0, weekly_steps = 0, change_steps = 0;
  for (int cell = 0; cell < 72; ++cell) {
    const int len = static_cast<int>(segments[cell].size());
    switch (ds.specs[cell].traffic.kind) {
      case ScenarioKind::flat: flat_steps += len; break;
      case ScenarioKind::weekly: weekly_steps += len; break;
      case ScenarioKind::changepoint: change_steps += len; break;
    }
  }
  CHECK(flat_steps == weekly_steps);
  CHECK(change_steps == 2 * flat_steps);

  // segments of cells with an in-training changepoint are centered on it
  const int cp = ds.specs[2].traffic.changepoint_step;
  REQUIRE(cp < split.train);
  const auto& values = ds.series(2, SeriesKind::traffic).values;
  const auto& seg = segments[2];
  const int start = cp - static_cast<int>(seg.size()) / 2;
  for (std::size_t k = 0; k < seg.size(); ++k)
    CHECK(seg[k] == values[start + k]);
}

TEST_CASE("training segments on a uniform dataset still produce windows") {
  const HexLayout layout = build_layout({{0, 0}}, 1.0);
  const SplitSpec split{100, 0};
  std::vector<MicrocellSpec> specs;
  for (int i = 0; i < 24; ++i) {
    MicrocellSpec s;
    s.traffic.kind = ScenarioKind::flat;
    s.traffic.base = 10.0;
    s.traffic.seed = i;
    specs.push_back(s);
  }
  const Dataset ds = build_dataset(layout, "one", specs, split, 3);
  const auto segments = training_segments(ds, SeriesKind::traffic);
  REQUIRE(!segments.empty());
  for (const auto& seg : segments) CHECK(seg.size() >= 2);
}
