#pragma once

#include <span>

namespace hexlb {

/// Load-distribution quality of a set of per-hexagon totals.
/// lvc: sample variance of the totals (zero iff all equal).
/// lf: average/peak ratio in (0, 1]; par: its reciprocal peak/average,
/// >= 1 with equality iff all totals are equal.
struct MetricReport {
  double lvc = 0.0;
  double lf = 0.0;
  double par = 0.0;
  double avg = 0.0;
  double peak = 0.0;
};

/// Load variance coefficient: sum_j (totals_j - mean)^2 / (N - 1).
/// Requires at least two totals.
double lvc(std::span<const double> totals);

struct LoadFactor {
  double lf = 0.0;   // average / peak
  double par = 0.0;  // peak / average
};

/// Requires a non-empty span with positive peak.
LoadFactor load_factor(std::span<const double> totals);

/// 100 * (before - after) / before. Requires before > 0.
double percent_decrease(double before, double after);

MetricReport metric_report(std::span<const double> totals);

}  // namespace hexlb
