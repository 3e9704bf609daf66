#include "hexlb/trafficgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hexlb/rng.hpp"

namespace hexlb {

namespace {

// Substream tags for per-microcell seed derivation.
constexpr std::uint64_t kTagTraffic = 0;
constexpr std::uint64_t kTagPriorities = 1;
constexpr std::uint64_t kTagParams = 2;

constexpr double kPriorityFloor = 0.01;
constexpr double kPriorityCeil = 0.99;

double base_pattern(const ScenarioSpec& spec, int t) {
  switch (spec.kind) {
    case ScenarioKind::flat:
      return spec.base;
    case ScenarioKind::weekly:
      return (t % 7 == 5 || t % 7 == 6) ? spec.base * spec.weekend_ratio
                                        : spec.base;
    case ScenarioKind::changepoint:
      return t >= spec.changepoint_step ? spec.base * spec.post_ratio
                                        : spec.base;
  }
  throw std::invalid_argument("unknown scenario kind");
}

}  // namespace

const char* kind_name(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::traffic: return "traffic";
    case SeriesKind::p1: return "p1";
    case SeriesKind::p2: return "p2";
    case SeriesKind::p3: return "p3";
  }
  return "?";
}

SeriesKind kind_from_name(const std::string& name) {
  if (name == "traffic") return SeriesKind::traffic;
  if (name == "p1") return SeriesKind::p1;
  if (name == "p2") return SeriesKind::p2;
  if (name == "p3") return SeriesKind::p3;
  throw std::invalid_argument("unknown series kind: " + name);
}

const char* scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::flat: return "flat";
    case ScenarioKind::weekly: return "weekly";
    case ScenarioKind::changepoint: return "changepoint";
  }
  return "?";
}

ScenarioKind scenario_from_name(const std::string& name) {
  if (name == "flat") return ScenarioKind::flat;
  if (name == "weekly") return ScenarioKind::weekly;
  if (name == "changepoint") return ScenarioKind::changepoint;
  throw std::invalid_argument("unknown scenario kind: " + name);
}

void ScenarioSpec::validate(int length) const {
  if (!(base > 0.0) || !std::isfinite(base))
    throw std::invalid_argument("scenario base must be positive");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma))
    throw std::invalid_argument("noise sigma must be non-negative");
  if (kind == ScenarioKind::weekly &&
      (!(weekend_ratio > 0.0) || !std::isfinite(weekend_ratio)))
    throw std::invalid_argument("weekend ratio must be positive");
  if (kind == ScenarioKind::changepoint) {
    if (!(post_ratio > 0.0) || !std::isfinite(post_ratio))
      throw std::invalid_argument("post ratio must be positive");
    if (changepoint_step < 0 || changepoint_step >= length)
      throw std::invalid_argument("changepoint step outside series length");
  }
}

Series gen_traffic(const ScenarioSpec& spec, int length) {
  if (length < 1) throw std::invalid_argument("series length must be >= 1");
  spec.validate(length);

  SplitMix64 rng(spec.seed);
  Series series;
  series.kind = SeriesKind::traffic;
  series.values.reserve(length);
  for (int t = 0; t < length; ++t) {
    const double v = base_pattern(spec, t) + spec.noise_sigma * rng.next_gaussian();
    series.values.push_back(std::max(0.0, v));
  }
  return series;
}

std::array<Series, 3> gen_priorities(const std::array<double, 3>& base_props,
                                     double sigma, int length,
                                     std::uint64_t seed) {
  if (length < 1) throw std::invalid_argument("series length must be >= 1");
  double sum = 0.0;
  for (double p : base_props) {
    if (!(p > 0.0) || !std::isfinite(p))
      throw std::invalid_argument("priority proportions must be positive");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("priority proportions must sum to 1");
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("priority sigma must be non-negative");

  SplitMix64 rng(seed);
  std::array<Series, 3> out;
  out[0].kind = SeriesKind::p1;
  out[1].kind = SeriesKind::p2;
  out[2].kind = SeriesKind::p3;
  for (auto& s : out) s.values.reserve(length);

  for (int t = 0; t < length; ++t) {
    std::array<double, 3> q;
    double total = 0.0;
    for (int k = 0; k < 3; ++k) {
      q[k] = std::clamp(base_props[k] + sigma * rng.next_gaussian(),
                        kPriorityFloor, kPriorityCeil);
      total += q[k];
    }
    for (int k = 0; k < 3; ++k) out[k].values.push_back(q[k] / total);
  }
  return out;
}

std::vector<MicrocellSpec> default_specs(const HexLayout& layout,
                                         std::uint64_t seed,
                                         const SplitSpec& split) {
  const int n = layout.triangle_count();
  const int length = split.length();

  // "Past" changepoints sit mid-way through the training range; "recent"
  // ones inside the evaluated tail of the test range (step 60 of 77 at the
  // default split, a weekday so the shift cannot be mistaken for a weekend
  // bump).
  const int past_step = std::max(1, split.train / 2);
  int recent_step;
  if (split.test > 0)
    recent_step = split.train + std::min(split.test - 1, 59);
  else
    recent_step = std::max(1, split.train * 3 / 4);

  std::vector<MicrocellSpec> specs;
  specs.reserve(n);
  for (int i = 0; i < n; ++i) {
    SplitMix64 params(mix_seed(seed, static_cast<std::uint64_t>(i), kTagParams));
    MicrocellSpec spec;
    spec.traffic.base = params.next_uniform(40.0, 80.0);
    spec.traffic.noise_sigma = 1.0;
    spec.traffic.seed = mix_seed(seed, static_cast<std::uint64_t>(i), kTagTraffic);

    switch (i % 8) {
      case 0:
      case 4:
        spec.traffic.kind = ScenarioKind::flat;
        break;
      case 1:
        spec.traffic.kind = ScenarioKind::weekly;
        spec.traffic.weekend_ratio = 1.5;
        break;
      case 5:
        spec.traffic.kind = ScenarioKind::weekly;
        spec.traffic.weekend_ratio = 0.7;
        break;
      case 2:
      case 6:
        spec.traffic.kind = ScenarioKind::changepoint;
        spec.traffic.changepoint_step = past_step;
        spec.traffic.post_ratio = (i % 8 == 2) ? 1.6 : 0.55;
        break;
      case 3:
      case 7:
        spec.traffic.kind = ScenarioKind::changepoint;
        spec.traffic.changepoint_step = std::min(recent_step, length - 1);
        spec.traffic.post_ratio = (i % 8 == 3) ? 1.6 : 0.55;
        break;
    }

    std::array<double, 3> props;
    double total = 0.0;
    for (double& p : props) {
      p = params.next_uniform(0.2, 0.6);
      total += p;
    }
    for (double& p : props) p /= total;
    spec.priorities.base = props;
    spec.priorities.sigma = 0.02;
    spec.priorities.seed =
        mix_seed(seed, static_cast<std::uint64_t>(i), kTagPriorities);
    specs.push_back(spec);
  }
  return specs;
}

Dataset build_dataset(const HexLayout& layout, std::string layout_ref,
                      std::vector<MicrocellSpec> specs, const SplitSpec& split,
                      std::uint64_t seed) {
  const int n = layout.triangle_count();
  if (static_cast<int>(specs.size()) != n)
    throw std::invalid_argument("expected " + std::to_string(n) +
                                " microcell specs, got " +
                                std::to_string(specs.size()));
  if (split.train < 1 || split.test < 0)
    throw std::invalid_argument("invalid train/test split");

  const int length = split.length();
  Dataset ds;
  ds.layout_ref = std::move(layout_ref);
  ds.split = split;
  ds.seed = seed;
  ds.cells.reserve(n);
  for (int i = 0; i < n; ++i) {
    const MicrocellSpec& spec = specs[i];
    std::array<Series, 4> cell;
    cell[0] = gen_traffic(spec.traffic, length);
    auto prios = gen_priorities(spec.priorities.base, spec.priorities.sigma,
                                length, spec.priorities.seed);
    cell[1] = std::move(prios[0]);
    cell[2] = std::move(prios[1]);
    cell[3] = std::move(prios[2]);
    ds.cells.push_back(std::move(cell));
  }
  ds.specs = std::move(specs);
  return ds;
}

}  // namespace hexlb
