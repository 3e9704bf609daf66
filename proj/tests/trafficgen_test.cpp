#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "hexlb/trafficgen.hpp"

using namespace hexlb;

namespace {

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double stddev(const std::vector<double>& v) {
  const double m = mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / (v.size() - 1));
}

}  // namespace

TEST_CASE("flat scenario without noise is exactly the base") {
  ScenarioSpec spec;
  spec.kind = ScenarioKind::flat;
  spec.base = 100.0;
  spec.noise_sigma = 0.0;
  const Series s = gen_traffic(spec, 10);
  REQUIRE(s.length() == 10);
  for (double v : s.values) CHECK(v == 100.0);
}

TEST_CASE("weekly scenario scales days 5 and 6 of each week") {
  ScenarioSpec spec;
  spec.kind = ScenarioKind::weekly;
  spec.base = 100.0;
  spec.weekend_ratio = 1.5;
  spec.noise_sigma = 0.0;
  const Series s = gen_traffic(spec, 21);
  for (int t = 0; t < 21; ++t) {
    const bool weekend = (t % 7 == 5 || t % 7 == 6);
    CHECK(s.values[t] == (weekend ? 150.0 : 100.0));
  }
}

TEST_CASE("changepoint scenario switches level at the step") {
  ScenarioSpec spec;
  spec.kind = ScenarioKind::changepoint;
  spec.base = 100.0;
  spec.changepoint_step = 4;
  spec.post_ratio = 0.6;
  spec.noise_sigma = 0.0;
  const Series s = gen_traffic(spec, 8);
  for (int t = 0; t < 4; ++t) CHECK(s.values[t] == 100.0);
  for (int t = 4; t < 8; ++t) CHECK(s.values[t] == doctest::Approx(60.0));
}

TEST_CASE("noisy flat series matches the gaussian moments") {
  ScenarioSpec spec;
  spec.kind = ScenarioKind::flat;
  spec.base = 100.0;
  spec.noise_sigma = 1.0;
  spec.seed = 20240901;
  const Series s = gen_traffic(spec, 10000);
  CHECK(mean(s.values) == doctest::Approx(100.0).epsilon(0.0005));
  CHECK(std::abs(mean(s.values) - 100.0) < 0.05);
  CHECK(std::abs(stddev(s.values) - 1.0) < 0.05);
}

TEST_CASE("traffic never goes negative") {
  ScenarioSpec spec;
  spec.kind = ScenarioKind::flat;
  spec.base = 0.5;
  spec.noise_sigma = 5.0;
  spec.seed = 3;
  const Series s = gen_traffic(spec, 2000);
  int clipped = 0;
  for (double v : s.values) {
    CHECK(v >= 0.0);
    if (v == 0.0) ++clipped;
  }
  CHECK(clipped > 0);  // the clip actually engaged
}

TEST_CASE("changepoint level ratio is observable in the sample means") {
  ScenarioSpec spec;
  spec.kind = ScenarioKind::changepoint;
  spec.base = 60.0;
  spec.changepoint_step = 2000;
  spec.post_ratio = 1.5;
  spec.noise_sigma = 1.0;
  spec.seed = 99;
  const Series s = gen_traffic(spec, 4000);
  const std::vector<double> pre(s.values.begin(), s.values.begin() + 2000);
  const std::vector<double> post(s.values.begin() + 2000, s.values.end());
  // 3 sigma / sqrt(n) band around the expected means
  const double band = 3.0 / std::sqrt(2000.0);
  CHECK(std::abs(mean(pre) - 60.0) < band);
  CHECK(std::abs(mean(post) - 90.0) < band);
}

TEST_CASE("spec validation") {
  ScenarioSpec spec;
  spec.base = -1.0;
  CHECK_THROWS_AS(gen_traffic(spec, 10), std::invalid_argument);
  spec.base = 10.0;
  spec.noise_sigma = -0.5;
  CHECK_THROWS_AS(gen_traffic(spec, 10), std::invalid_argument);
  spec.noise_sigma = 1.0;
  spec.kind = ScenarioKind::changepoint;
  spec.changepoint_step = 10;
  spec.post_ratio = 1.2;
  CHECK_THROWS_AS(gen_traffic(spec, 10), std::invalid_argument);
  spec.changepoint_step = 9;
  CHECK_NOTHROW(gen_traffic(spec, 10));
  CHECK_THROWS_AS(gen_traffic(spec, 0), std::invalid_argument);
}

TEST_CASE("priorities without noise reproduce the base exactly") {
  const auto [p1, p2, p3] =
      gen_priorities({1.0 / 3, 1.0 / 3, 1.0 / 3}, 0.0, 5, 1);
  for (int t = 0; t < 5; ++t) {
    CHECK(p1.values[t] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(p2.values[t] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(p3.values[t] == doctest::Approx(1.0 / 3).epsilon(1e-15));
  }
}

TEST_CASE("priority triples always sum to one") {
  for (std::uint64_t seed : {1ULL, 7ULL, 42ULL, 12345ULL}) {
    const auto series = gen_priorities({0.5, 0.3, 0.2}, 0.1, 500, seed);
    for (int t = 0; t < 500; ++t) {
      const double sum = series[0].values[t] + series[1].values[t] +
                         series[2].values[t];
      CHECK(std::abs(sum - 1.0) <= 1e-9);
      for (const Series& s : series) {
        CHECK(s.values[t] >= 0.0);
        CHECK(s.values[t] <= 1.0);
      }
    }
  }
}

TEST_CASE("priority sample means track the base proportions") {
  const auto series = gen_priorities({0.5, 0.3, 0.2}, 0.02, 10000, 77);
  CHECK(std::abs(mean(series[0].values) - 0.5) < 0.01);
  CHECK(std::abs(mean(series[1].values) - 0.3) < 0.01);
  CHECK(std::abs(mean(series[2].values) - 0.2) < 0.01);
}

TEST_CASE("degenerate priority proportions are rejected") {
  CHECK_THROWS_AS(gen_priorities({0.0, 0.5, 0.5}, 0.1, 10, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(gen_priorities({-0.1, 0.6, 0.5}, 0.1, 10, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(gen_priorities({0.5, 0.3, 0.3}, 0.1, 10, 1),
                  std::invalid_argument);
}

TEST_CASE("default dataset composition") {
  const HexLayout layout = preset_wnl1();
  const SplitSpec split;  // 2800 + 77
  const auto specs = default_specs(layout, 42, split);
  REQUIRE(specs.size() == 72);
  const Dataset ds = build_dataset(layout, "wnl1", specs, split, 42);

  CHECK(ds.microcell_count() == 72);
  CHECK(ds.split.train == 2800);
  CHECK(ds.split.test == 77);
  for (int cell = 0; cell < 72; ++cell)
    for (SeriesKind kind : {SeriesKind::traffic, SeriesKind::p1,
                            SeriesKind::p2, SeriesKind::p3})
      CHECK(ds.series(cell, kind).length() == 2877);

  // scenario mixture: 2 flat, 2 weekly, 4 changepoint per block of 8
  int flat = 0, weekly = 0, change = 0;
  for (const MicrocellSpec& s : ds.specs) {
    switch (s.traffic.kind) {
      case ScenarioKind::flat: ++flat; break;
      case ScenarioKind::weekly: ++weekly; break;
      case ScenarioKind::changepoint: ++change; break;
    }
  }
  CHECK(flat == 18);
  CHECK(weekly == 18);
  CHECK(change == 36);

  // traffic bases drawn from [40, 80]
  for (const MicrocellSpec& s : ds.specs) {
    CHECK(s.traffic.base >= 40.0);
    CHECK(s.traffic.base < 80.0);
  }
}

TEST_CASE("datasets are deterministic in the seed") {
  const HexLayout layout = preset_wnl1();
  const SplitSpec split{50, 10};
  const Dataset a =
      build_dataset(layout, "wnl1", default_specs(layout, 9, split), split, 9);
  const Dataset b =
      build_dataset(layout, "wnl1", default_specs(layout, 9, split), split, 9);
  REQUIRE(a.microcell_count() == b.microcell_count());
  for (int cell = 0; cell < a.microcell_count(); ++cell)
    for (int k = 0; k < 4; ++k)
      CHECK(a.cells[cell][k].values == b.cells[cell][k].values);

  const Dataset c =
      build_dataset(layout, "wnl1", default_specs(layout, 10, split), split, 10);
  CHECK(a.cells[0][0].values != c.cells[0][0].values);
}

TEST_CASE("build_dataset rejects a spec count mismatch") {
  const HexLayout layout = preset_wnl1();
  const SplitSpec split{50, 10};
  auto specs = default_specs(layout, 1, split);
  specs.pop_back();
  CHECK_THROWS_AS(build_dataset(layout, "wnl1", specs, split, 1),
                  std::invalid_argument);
}
