#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hexlb/hexgrid.hpp"

namespace hexlb {

enum class SeriesKind { traffic, p1, p2, p3 };

const char* kind_name(SeriesKind kind);
SeriesKind kind_from_name(const std::string& name);

/// Per-microcell time series, one value per day. Traffic values are
/// non-negative; priority shares lie in [0, 1] and generated triples sum
/// to 1 at every timestep.
struct Series {
  SeriesKind kind = SeriesKind::traffic;
  std::vector<double> values;

  int length() const { return static_cast<int>(values.size()); }
};

enum class ScenarioKind {
  flat,        // no weekday/weekend variation
  weekly,      // weekends scaled by weekend_ratio (days t mod 7 in {5, 6})
  changepoint  // level scaled by post_ratio from changepoint_step onward
};

const char* scenario_name(ScenarioKind kind);
ScenarioKind scenario_from_name(const std::string& name);

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::flat;
  double base = 60.0;
  double weekend_ratio = 1.5;  // weekly only
  int changepoint_step = 0;    // changepoint only
  double post_ratio = 1.0;     // changepoint only
  double noise_sigma = 1.0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument for non-positive base/ratios, negative
  /// sigma, non-finite fields, or a changepoint outside [0, length).
  void validate(int length) const;
};

struct PrioritySpec {
  std::array<double, 3> base{1.0 / 3, 1.0 / 3, 1.0 / 3};
  double sigma = 0.02;
  std::uint64_t seed = 0;
};

struct MicrocellSpec {
  ScenarioSpec traffic;
  PrioritySpec priorities;
};

struct SplitSpec {
  int train = 2800;
  int test = 77;

  int length() const { return train + test; }
};

/// Synthetic per-microcell dataset: four series (T, P1, P2, P3) per
/// microcell of the layout, all of identical length train + test.
struct Dataset {
  std::string layout_ref;
  SplitSpec split;
  std::uint64_t seed = 0;
  std::vector<MicrocellSpec> specs;            // one per microcell
  std::vector<std::array<Series, 4>> cells;    // [microcell][kind]

  int microcell_count() const { return static_cast<int>(cells.size()); }
  const Series& series(int microcell, SeriesKind kind) const {
    return cells[microcell][static_cast<int>(kind)];
  }
};

/// values[t] = max(0, pattern(t) + sigma * z_t), z_t standard normal from
/// the spec's seeded stream. pattern(t) is base for flat series,
/// base * weekend_ratio on days t mod 7 in {5, 6} for weekly ones, and
/// base * post_ratio from changepoint_step onward for changepoint ones.
Series gen_traffic(const ScenarioSpec& spec, int length);

/// Per step, perturbs each base proportion with sigma * z (three gaussian
/// draws in component order), clips to [0.01, 0.99] and renormalizes to
/// sum 1. base_props must be componentwise positive and sum to 1.
std::array<Series, 3> gen_priorities(const std::array<double, 3>& base_props,
                                     double sigma, int length,
                                     std::uint64_t seed);

/// Default per-microcell specs: scenarios cycle over microcell index as
/// flat, weekly(high weekends), changepoint(past, rise),
/// changepoint(recent, rise), flat, weekly(low weekends),
/// changepoint(past, drop), changepoint(recent, drop) -- a 1:1:2 mixture of
/// the three scenario classes. Traffic bases are drawn uniformly from
/// [40, 80] and priority proportions from normalized uniforms, both from
/// per-microcell substreams of `seed`. "Past" changepoints land mid-way
/// through the training range, "recent" ones inside the evaluated part of
/// the test range.
std::vector<MicrocellSpec> default_specs(const HexLayout& layout,
                                         std::uint64_t seed,
                                         const SplitSpec& split);

/// Generates every series from its spec. Deterministic given the specs;
/// `seed` is recorded for the manifest. Throws std::invalid_argument if
/// specs.size() != layout.triangle_count().
Dataset build_dataset(const HexLayout& layout, std::string layout_ref,
                      std::vector<MicrocellSpec> specs, const SplitSpec& split,
                      std::uint64_t seed);

}  // namespace hexlb
