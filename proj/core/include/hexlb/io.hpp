#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexlb/ctp.hpp"
#include "hexlb/hexgrid.hpp"
#include "hexlb/lstm.hpp"
#include "hexlb/metrics.hpp"
#include "hexlb/pct.hpp"
#include "hexlb/trafficgen.hpp"

namespace hexlb {

/// Missing, malformed or inconsistent input files.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Formats with 9 significant digits ("%.9g"); the dataset CSV float format.
std::string format_g9(double value);

// -- layouts -----------------------------------------------------------

/// JSON {"side": s, "centers": [[x, y], ...]}.
void save_layout(const HexLayout& layout, const std::filesystem::path& path);
HexLayout load_layout_file(const std::filesystem::path& path);

/// Resolves "wnl1"/"wnl2" preset names, otherwise loads a layout file.
HexLayout resolve_layout(const std::string& preset_or_path);

// -- datasets ----------------------------------------------------------

/// Writes traffic.csv, p1.csv, p2.csv, p3.csv (header "microcell,t0,t1,...",
/// floats with 9 significant digits) plus manifest.json
/// {seed, specs, layout_ref, split}.
void save_dataset(const Dataset& dataset, const std::filesystem::path& dir);
Dataset load_dataset(const std::filesystem::path& dir);

// -- models ------------------------------------------------------------

/// JSON with hidden size, window, scaler and row-major weight arrays.
/// Round-trips bit-exactly.
void save_model(const LstmModel& model, const std::filesystem::path& path);
LstmModel load_model(const std::filesystem::path& path);

// -- forecasts & scores --------------------------------------------------

/// CSV "microcell,T_hat,P1_act,P2_act,P3_act,score".
void save_forecast_csv(const std::vector<ForecastRow>& rows,
                       const std::filesystem::path& path);

/// Accepts either the forecast CSV or a two-column "microcell,score" CSV;
/// rows may appear in any order but must cover 0..n-1 exactly once.
ScoreVector load_scores_csv(const std::filesystem::path& path);

void save_scores_csv(const ScoreVector& scores,
                     const std::filesystem::path& path);

// -- balance reports -----------------------------------------------------

/// JSON {avg_score, totals_before, totals_after,
/// transfers: [{hex, local, from, to, score}], iterations} with a "metrics"
/// object (before/after lvc, lf_eq29, par and percent_decrease_lvc)
/// appended.
void save_balance_report(const BalanceResult& result,
                         const std::filesystem::path& path);

/// CSV "iteration,lvc,lf_eq29,par": metric trajectory over the main loop,
/// iteration 0 being the initial state.
void save_metrics_csv(const BalanceResult& result,
                      const std::filesystem::path& path);

}  // namespace hexlb
