#include "hexlb/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hexlb {

double lvc(std::span<const double> totals) {
  if (totals.size() < 2)
    throw std::invalid_argument("lvc needs at least two totals");
  const double mean =
      std::accumulate(totals.begin(), totals.end(), 0.0) / totals.size();
  double acc = 0.0;
  for (double t : totals) acc += (t - mean) * (t - mean);
  return acc / static_cast<double>(totals.size() - 1);
}

LoadFactor load_factor(std::span<const double> totals) {
  if (totals.empty())
    throw std::invalid_argument("load factor needs at least one total");
  const double peak = *std::max_element(totals.begin(), totals.end());
  if (!(peak > 0.0))
    throw std::invalid_argument("load factor needs a positive peak");
  const double mean =
      std::accumulate(totals.begin(), totals.end(), 0.0) / totals.size();
  return {mean / peak, peak / mean};
}

double percent_decrease(double before, double after) {
  if (!(before > 0.0))
    throw std::invalid_argument("percent decrease needs before > 0");
  return 100.0 * (before - after) / before;
}

MetricReport metric_report(std::span<const double> totals) {
  MetricReport r;
  r.lvc = lvc(totals);
  const LoadFactor f = load_factor(totals);
  r.lf = f.lf;
  r.par = f.par;
  r.peak = *std::max_element(totals.begin(), totals.end());
  r.avg = std::accumulate(totals.begin(), totals.end(), 0.0) / totals.size();
  return r;
}

}  // namespace hexlb
