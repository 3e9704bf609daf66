#include "hexlb/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hexlb {

namespace {

using nlohmann::json;

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("write failed for " + path.string());
}

json parse_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw DataError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

// Quantizes to the dataset file precision of 9 significant digits.
double q9(double value) {
  return std::strtod(format_g9(value).c_str(), nullptr);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

double parse_double(const std::string& text, const std::string& context) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0')
    throw DataError("bad number '" + text + "' in " + context);
  return v;
}

json scenario_to_json(const ScenarioSpec& s) {
  return json{{"kind", scenario_name(s.kind)},
              {"base", q9(s.base)},
              {"weekend_ratio", q9(s.weekend_ratio)},
              {"changepoint_step", s.changepoint_step},
              {"post_ratio", q9(s.post_ratio)},
              {"noise_sigma", q9(s.noise_sigma)},
              {"seed", s.seed}};
}

ScenarioSpec scenario_from_json(const json& j) {
  ScenarioSpec s;
  s.kind = scenario_from_name(j.at("kind").get<std::string>());
  s.base = j.at("base").get<double>();
  s.weekend_ratio = j.at("weekend_ratio").get<double>();
  s.changepoint_step = j.at("changepoint_step").get<int>();
  s.post_ratio = j.at("post_ratio").get<double>();
  s.noise_sigma = j.at("noise_sigma").get<double>();
  s.seed = j.at("seed").get<std::uint64_t>();
  return s;
}

json priority_to_json(const PrioritySpec& p) {
  return json{{"base", {q9(p.base[0]), q9(p.base[1]), q9(p.base[2])}},
              {"sigma", q9(p.sigma)},
              {"seed", p.seed}};
}

PrioritySpec priority_from_json(const json& j) {
  PrioritySpec p;
  const auto& base = j.at("base");
  for (int k = 0; k < 3; ++k) p.base[k] = base.at(k).get<double>();
  p.sigma = j.at("sigma").get<double>();
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

void save_series_csv(const Dataset& ds, SeriesKind kind,
                     const std::filesystem::path& path) {
  std::string out = "microcell";
  const int length = ds.split.length();
  for (int t = 0; t < length; ++t) out += ",t" + std::to_string(t);
  out += "\n";
  for (int cell = 0; cell < ds.microcell_count(); ++cell) {
    out += std::to_string(cell);
    for (double v : ds.series(cell, kind).values) out += "," + format_g9(v);
    out += "\n";
  }
  write_text(path, out);
}

void load_series_csv(Dataset& ds, SeriesKind kind,
                     const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("microcell,t0"))
    throw DataError("unexpected header in " + path.string());

  const int expected_len = ds.split.length();
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (static_cast<int>(fields.size()) != expected_len + 1)
      throw DataError("row length mismatch in " + path.string());
    const int cell = static_cast<int>(
        parse_double(fields[0], path.string()));
    if (cell < 0 || cell >= ds.microcell_count())
      throw DataError("microcell index out of range in " + path.string());
    Series& series = ds.cells[cell][static_cast<int>(kind)];
    series.kind = kind;
    series.values.clear();
    series.values.reserve(expected_len);
    for (int k = 1; k <= expected_len; ++k)
      series.values.push_back(parse_double(fields[k], path.string()));
    ++rows;
  }
  if (rows != ds.microcell_count())
    throw DataError("expected " + std::to_string(ds.microcell_count()) +
                    " rows in " + path.string());
}

}  // namespace

std::string format_g9(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void save_layout(const HexLayout& layout, const std::filesystem::path& path) {
  json centers = json::array();
  for (const Point& c : layout.centers()) centers.push_back({c.x, c.y});
  write_text(path,
             json{{"side", layout.side()}, {"centers", centers}}.dump(2) + "\n");
}

HexLayout load_layout_file(const std::filesystem::path& path) {
  const json j = parse_json(path);
  std::vector<Point> centers;
  try {
    for (const auto& c : j.at("centers"))
      centers.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
    return build_layout(std::move(centers), j.at("side").get<double>());
  } catch (const json::exception& e) {
    throw DataError("invalid layout file " + path.string() + ": " + e.what());
  }
}

HexLayout resolve_layout(const std::string& preset_or_path) {
  if (preset_or_path == "wnl1") return preset_wnl1();
  if (preset_or_path == "wnl2") return preset_wnl2();
  if (!std::filesystem::exists(preset_or_path))
    throw DataError("unknown layout preset or missing file: " +
                    preset_or_path);
  return load_layout_file(preset_or_path);
}

void save_dataset(const Dataset& ds, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  json specs = json::array();
  for (const MicrocellSpec& spec : ds.specs)
    specs.push_back({{"traffic", scenario_to_json(spec.traffic)},
                     {"priorities", priority_to_json(spec.priorities)}});
  const json manifest{{"layout_ref", ds.layout_ref},
                      {"seed", ds.seed},
                      {"split", {{"train", ds.split.train}, {"test", ds.split.test}}},
                      {"specs", specs}};
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
  save_series_csv(ds, SeriesKind::traffic, dir / "traffic.csv");
  save_series_csv(ds, SeriesKind::p1, dir / "p1.csv");
  save_series_csv(ds, SeriesKind::p2, dir / "p2.csv");
  save_series_csv(ds, SeriesKind::p3, dir / "p3.csv");
}

Dataset load_dataset(const std::filesystem::path& dir) {
  const json manifest = parse_json(dir / "manifest.json");
  Dataset ds;
  try {
    ds.layout_ref = manifest.at("layout_ref").get<std::string>();
    ds.seed = manifest.at("seed").get<std::uint64_t>();
    ds.split.train = manifest.at("split").at("train").get<int>();
    ds.split.test = manifest.at("split").at("test").get<int>();
    for (const auto& j : manifest.at("specs"))
      ds.specs.push_back({scenario_from_json(j.at("traffic")),
                          priority_from_json(j.at("priorities"))});
  } catch (const json::exception& e) {
    throw DataError("invalid manifest in " + dir.string() + ": " + e.what());
  }
  ds.cells.resize(ds.specs.size());
  load_series_csv(ds, SeriesKind::traffic, dir / "traffic.csv");
  load_series_csv(ds, SeriesKind::p1, dir / "p1.csv");
  load_series_csv(ds, SeriesKind::p2, dir / "p2.csv");
  load_series_csv(ds, SeriesKind::p3, dir / "p3.csv");
  return ds;
}

void save_model(const LstmModel& m, const std::filesystem::path& path) {
  const json j{{"hidden", m.hidden},
               {"window", m.window},
               {"scaler",
                {{"min", m.scaler.min},
                 {"max", m.scaler.max},
                 {"degenerate", m.scaler.degenerate}}},
               {"w_forget", m.w_forget},
               {"w_input", m.w_input},
               {"w_cand", m.w_cand},
               {"w_output", m.w_output},
               {"b_forget", m.b_forget},
               {"b_input", m.b_input},
               {"b_cand", m.b_cand},
               {"b_output", m.b_output},
               {"w_head", m.w_head},
               {"b_head", m.b_head}};
  write_text(path, j.dump(2) + "\n");
}

LstmModel load_model(const std::filesystem::path& path) {
  const json j = parse_json(path);
  LstmModel m;
  try {
    m.hidden = j.at("hidden").get<int>();
    m.window = j.at("window").get<int>();
    m.scaler.min = j.at("scaler").at("min").get<double>();
    m.scaler.max = j.at("scaler").at("max").get<double>();
    m.scaler.degenerate = j.at("scaler").at("degenerate").get<bool>();
    m.w_forget = j.at("w_forget").get<std::vector<double>>();
    m.w_input = j.at("w_input").get<std::vector<double>>();
    m.w_cand = j.at("w_cand").get<std::vector<double>>();
    m.w_output = j.at("w_output").get<std::vector<double>>();
    m.b_forget = j.at("b_forget").get<std::vector<double>>();
    m.b_input = j.at("b_input").get<std::vector<double>>();
    m.b_cand = j.at("b_cand").get<std::vector<double>>();
    m.b_output = j.at("b_output").get<std::vector<double>>();
    m.w_head = j.at("w_head").get<std::vector<double>>();
    m.b_head = j.at("b_head").get<double>();
  } catch (const json::exception& e) {
    throw DataError("invalid model file " + path.string() + ": " + e.what());
  }
  const std::size_t wsize = static_cast<std::size_t>(m.hidden) * (m.hidden + 1);
  for (const auto* w : {&m.w_forget, &m.w_input, &m.w_cand, &m.w_output})
    if (w->size() != wsize)
      throw DataError("weight shape mismatch in " + path.string());
  for (const auto* b : {&m.b_forget, &m.b_input, &m.b_cand, &m.b_output})
    if (static_cast<int>(b->size()) != m.hidden)
      throw DataError("bias shape mismatch in " + path.string());
  if (static_cast<int>(m.w_head.size()) != m.hidden)
    throw DataError("head shape mismatch in " + path.string());
  return m;
}

void save_forecast_csv(const std::vector<ForecastRow>& rows,
                       const std::filesystem::path& path) {
  std::string out = "microcell,T_hat,P1_act,P2_act,P3_act,score\n";
  for (const ForecastRow& r : rows) {
    out += std::to_string(r.microcell);
    for (double v : {r.traffic_hat, r.p1_act, r.p2_act, r.p3_act, r.score})
      out += "," + format_g9(v);
    out += "\n";
  }
  write_text(path, out);
}

ScoreVector load_scores_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty scores file " + path.string());
  const auto header = split_csv(line);
  if (header.size() < 2 || header[0] != "microcell" ||
      header.back() != "score")
    throw DataError("expected 'microcell,...,score' header in " +
                    path.string());
  const std::size_t columns = header.size();

  std::vector<std::pair<int, double>> entries;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != columns)
      throw DataError("row width mismatch in " + path.string());
    entries.emplace_back(
        static_cast<int>(parse_double(fields[0], path.string())),
        parse_double(fields.back(), path.string()));
  }
  ScoreVector scores(entries.size(), -1.0);
  for (const auto& [cell, score] : entries) {
    if (cell < 0 || cell >= static_cast<int>(scores.size()) ||
        scores[cell] >= 0.0)
      throw DataError("microcell indices must cover 0..n-1 exactly once in " +
                      path.string());
    scores[cell] = score;
  }
  return scores;
}

void save_scores_csv(const ScoreVector& scores,
                     const std::filesystem::path& path) {
  std::string out = "microcell,score\n";
  for (std::size_t i = 0; i < scores.size(); ++i)
    out += std::to_string(i) + "," + format_g9(scores[i]) + "\n";
  write_text(path, out);
}

void save_balance_report(const BalanceResult& result,
                         const std::filesystem::path& path) {
  json transfers = json::array();
  for (const Transfer& t : result.transfers)
    transfers.push_back({{"hex", t.triangle.hex},
                         {"local", t.triangle.local},
                         {"from", t.from},
                         {"to", t.to},
                         {"score", t.score}});
  json j{{"avg_score", result.avg_score},
         {"totals_before", result.totals_before},
         {"totals_after", result.totals_after},
         {"transfers", transfers},
         {"iterations", result.iterations}};
  if (result.totals_before.size() >= 2) {
    const MetricReport before = metric_report(result.totals_before);
    const MetricReport after = metric_report(result.totals_after);
    j["metrics"] = {
        {"before",
         {{"lvc", before.lvc}, {"lf_eq29", before.lf}, {"par", before.par}}},
        {"after",
         {{"lvc", after.lvc}, {"lf_eq29", after.lf}, {"par", after.par}}},
        {"percent_decrease_lvc",
         before.lvc > 0.0 ? percent_decrease(before.lvc, after.lvc) : 0.0}};
  }
  write_text(path, j.dump(2) + "\n");
}

void save_metrics_csv(const BalanceResult& result,
                      const std::filesystem::path& path) {
  std::string out = "iteration,lvc,lf_eq29,par\n";
  for (std::size_t it = 0; it < result.totals_by_iteration.size(); ++it) {
    if (result.totals_by_iteration[it].size() < 2) break;
    const MetricReport r = metric_report(result.totals_by_iteration[it]);
    out += std::to_string(it) + "," + format_g9(r.lvc) + "," +
           format_g9(r.lf) + "," + format_g9(r.par) + "\n";
  }
  write_text(path, out);
}

}  // namespace hexlb
