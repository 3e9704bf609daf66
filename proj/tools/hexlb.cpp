// hexlb -- command-line driver for the hexagonal-cell load-balancing toolkit.
// Subcommands compose through files: gen writes a dataset, train fits the
// four per-kind forecasters, predict emits next-day scores, balance trades
// border microcells between cells, report prints load metrics. run chains
// all stages into one output directory.

#include <array>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hexlb/ctp.hpp"
#include "hexlb/hexgrid.hpp"
#include "hexlb/io.hpp"
#include "hexlb/lstm.hpp"
#include "hexlb/metrics.hpp"
#include "hexlb/pct.hpp"
#include "hexlb/rng.hpp"
#include "hexlb/svg.hpp"
#include "hexlb/trafficgen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uint64_t kTrainSeedSalt = 100;

struct GenArgs {
  std::string layout = "wnl1";
  std::uint64_t seed = 0;
  std::string out;
  int train_len = 2800;
  int test_len = 77;
  std::optional<int> length;  // overrides the split with {length, 0}
};

struct TrainArgs {
  std::string data;
  std::string out;
  std::uint64_t seed = 0;
  hexlb::TrainConfig cfg;
};

struct PredictArgs {
  std::string data;
  std::string models;
  std::string out;
  std::optional<int> t;
};

struct BalanceArgs {
  std::string scores;
  std::string layout = "wnl1";
  std::string out;
  bool include_second_ring = false;
  bool svg = false;
};

void gen_stage(const GenArgs& args) {
  const hexlb::HexLayout layout = hexlb::resolve_layout(args.layout);
  hexlb::SplitSpec split{args.train_len, args.test_len};
  if (args.length) split = {*args.length, 0};
  auto specs = hexlb::default_specs(layout, args.seed, split);
  const hexlb::Dataset ds = hexlb::build_dataset(layout, args.layout,
                                                 std::move(specs), split,
                                                 args.seed);
  fs::create_directories(args.out);
  hexlb::save_dataset(ds, args.out);
  hexlb::save_layout(layout, fs::path(args.out) / "layout.json");
  std::cout << "gen: " << ds.microcell_count() << " microcells x 4 series of "
            << split.length() << " steps -> " << args.out << "\n";
}

const char* model_filename(hexlb::SeriesKind kind) {
  switch (kind) {
    case hexlb::SeriesKind::traffic: return "model_traffic.json";
    case hexlb::SeriesKind::p1: return "model_p1.json";
    case hexlb::SeriesKind::p2: return "model_p2.json";
    case hexlb::SeriesKind::p3: return "model_p3.json";
  }
  return "model.json";
}

void train_stage(const TrainArgs& args) {
  const hexlb::Dataset ds = hexlb::load_dataset(args.data);
  fs::create_directories(args.out);

  // The four kind-models are independent; train them as parallel tasks.
  // Each derives its own seed, so results never depend on scheduling.
  constexpr hexlb::SeriesKind kinds[] = {
      hexlb::SeriesKind::traffic, hexlb::SeriesKind::p1,
      hexlb::SeriesKind::p2, hexlb::SeriesKind::p3};
  struct Trained {
    hexlb::LstmModel model;
    std::vector<double> losses;
  };
  std::array<std::future<Trained>, 4> tasks;
  for (int k = 0; k < 4; ++k) {
    tasks[k] = std::async(std::launch::async, [&, k] {
      hexlb::TrainConfig cfg = args.cfg;
      cfg.seed = hexlb::mix_seed(args.seed, kTrainSeedSalt,
                                 static_cast<std::uint64_t>(kinds[k]));
      Trained result;
      result.model =
          hexlb::train(hexlb::training_segments(ds, kinds[k]), cfg,
                       &result.losses);
      return result;
    });
  }
  for (int k = 0; k < 4; ++k) {
    const Trained result = tasks[k].get();
    hexlb::save_model(result.model,
                      fs::path(args.out) / model_filename(kinds[k]));
    std::printf("train: %s  first-epoch loss %.6g  last %.6g\n",
                hexlb::kind_name(kinds[k]), result.losses.front(),
                result.losses.back());
  }
}

hexlb::KindModels load_models(const fs::path& dir) {
  return {hexlb::load_model(dir / model_filename(hexlb::SeriesKind::traffic)),
          hexlb::load_model(dir / model_filename(hexlb::SeriesKind::p1)),
          hexlb::load_model(dir / model_filename(hexlb::SeriesKind::p2)),
          hexlb::load_model(dir / model_filename(hexlb::SeriesKind::p3))};
}

void predict_stage(const PredictArgs& args) {
  const hexlb::Dataset ds = hexlb::load_dataset(args.data);
  const hexlb::KindModels models = load_models(args.models);
  const int t = args.t.value_or(ds.split.length() - 1);
  const auto rows = hexlb::forecast_rows(models, ds, t);
  fs::create_directories(args.out);
  hexlb::save_forecast_csv(rows, fs::path(args.out) / "forecast.csv");
  std::cout << "predict: wrote " << rows.size()
            << " next-day scores for t=" << t << "\n";
}

void balance_stage(const BalanceArgs& args) {
  const hexlb::HexLayout layout = hexlb::resolve_layout(args.layout);
  const hexlb::ScoreVector scores = hexlb::load_scores_csv(args.scores);
  hexlb::BalanceOptions options;
  options.include_second_ring = args.include_second_ring;
  const hexlb::BalanceResult result = hexlb::balance(scores, layout, options);

  fs::create_directories(args.out);
  hexlb::save_balance_report(result, fs::path(args.out) / "balance_report.json");
  hexlb::save_metrics_csv(result, fs::path(args.out) / "metrics.csv");
  if (args.svg) {
    hexlb::save_svg(
        hexlb::layout_svg(layout, hexlb::Assignment::identity(layout)),
        fs::path(args.out) / "before.svg");
    hexlb::save_svg(hexlb::layout_svg(layout, result.assignment),
                    fs::path(args.out) / "after.svg");
  }
  std::cout << "balance: " << result.transfers.size() << " transfers over "
            << result.iterations << " iterations, avg score "
            << hexlb::format_g9(result.avg_score) << "\n";
}

void print_metric_table(const std::vector<double>& before,
                        const std::vector<double>& after) {
  const hexlb::MetricReport b = hexlb::metric_report(before);
  std::printf("%-10s %14s %12s %12s\n", "", "lvc", "lf_eq29", "par");
  std::printf("%-10s %14.4f %12.6f %12.6f\n", "before", b.lvc, b.lf, b.par);
  if (!after.empty()) {
    const hexlb::MetricReport a = hexlb::metric_report(after);
    std::printf("%-10s %14.4f %12.6f %12.6f\n", "after", a.lvc, a.lf, a.par);
    std::printf("%-10s %13.2f%%\n", "lvc drop",
                hexlb::percent_decrease(b.lvc, a.lvc));
  }
}

std::vector<double> parse_totals(const std::string& csv) {
  std::vector<double> out;
  std::string token;
  std::istringstream ss(csv);
  while (std::getline(ss, token, ',')) {
    try {
      out.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw hexlb::DataError("bad total '" + token + "'");
    }
  }
  return out;
}

void report_stage(const std::string& input, const std::string& before_csv,
                  const std::string& after_csv) {
  if (!input.empty()) {
    const json j = json::parse(std::ifstream(input), nullptr, false);
    if (j.is_discarded())
      throw hexlb::DataError("invalid balance report " + input);
    const auto before = j.at("totals_before").get<std::vector<double>>();
    const auto after = j.at("totals_after").get<std::vector<double>>();
    std::printf("avg score %.4f, %zu transfers, %d iterations\n",
                j.at("avg_score").get<double>(),
                j.at("transfers").size(), j.at("iterations").get<int>());
    print_metric_table(before, after);
    return;
  }
  if (before_csv.empty())
    throw hexlb::DataError("report needs --input or --before totals");
  print_metric_table(parse_totals(before_csv),
                     after_csv.empty() ? std::vector<double>{}
                                       : parse_totals(after_csv));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prioritized-traffic forecasting and hexagonal-cell load balancing"};
  app.require_subcommand(1);

  GenArgs gen_args;
  TrainArgs train_args;
  PredictArgs predict_args;
  BalanceArgs balance_args;
  std::string report_input, report_before, report_after;

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset");
  gen->add_option("--layout", gen_args.layout, "Layout preset (wnl1, wnl2) or file");
  gen->add_option("--seed", gen_args.seed, "Dataset seed")->required();
  gen->add_option("--out", gen_args.out, "Output directory")->required();
  gen->add_option("--train-len", gen_args.train_len, "Training timesteps");
  gen->add_option("--test-len", gen_args.test_len, "Test timesteps");
  int gen_length = 0;
  auto* len_opt = gen->add_option("--length", gen_length,
                                  "Total series length (overrides the split)");

  // ---- train ----
  auto* train = app.add_subcommand("train", "Train the four forecasters");
  train->add_option("--data", train_args.data, "Dataset directory")->required();
  train->add_option("--seed", train_args.seed, "Training seed")->required();
  train->add_option("--out", train_args.out, "Model output directory")->required();
  train->add_option("--epochs", train_args.cfg.epochs, "Training epochs");
  train->add_option("--hidden", train_args.cfg.hidden, "Hidden units");
  train->add_option("--window", train_args.cfg.window, "Input window length");
  train->add_option("--lr", train_args.cfg.learning_rate, "Learning rate");
  train->add_option("--clip", train_args.cfg.clip_norm, "Gradient norm clip");

  // ---- predict ----
  auto* predict = app.add_subcommand("predict", "Forecast next-day traffic scores");
  predict->add_option("--data", predict_args.data, "Dataset directory")->required();
  predict->add_option("--models", predict_args.models, "Model directory")->required();
  predict->add_option("--out", predict_args.out, "Output directory")->required();
  int predict_t = 0;
  auto* t_opt = predict->add_option("--t", predict_t,
                                    "Timestep to forecast from (default: last)");

  // ---- balance ----
  auto* balance = app.add_subcommand("balance", "Rebalance load between cells");
  balance->add_option("--scores", balance_args.scores, "Score CSV")->required();
  balance->add_option("--layout", balance_args.layout, "Layout preset or file");
  balance->add_option("--out", balance_args.out, "Output directory")->required();
  balance->add_flag("--include-second-ring", balance_args.include_second_ring,
                    "Admit the middle triangle of each shared wedge");
  balance->add_flag("--svg", balance_args.svg, "Write before/after SVGs");

  // ---- report ----
  auto* report = app.add_subcommand("report", "Print load metrics");
  report->add_option("--input", report_input, "balance_report.json to summarize");
  report->add_option("--before", report_before, "Comma-separated totals");
  report->add_option("--after", report_after, "Comma-separated totals");

  // ---- run ----
  auto* run = app.add_subcommand("run", "Full pipeline: gen, train, predict, balance");
  std::string run_config;
  GenArgs run_gen;
  hexlb::TrainConfig run_train;
  bool run_second_ring = false, run_svg = false;
  std::uint64_t run_seed = 0;
  int run_t = 0;
  run->add_option("--config", run_config, "JSON config; flags override");
  auto* run_layout_opt = run->add_option("--layout", run_gen.layout, "Layout preset or file");
  auto* run_seed_opt = run->add_option("--seed", run_seed, "Pipeline seed");
  auto* run_out_opt = run->add_option("--out", run_gen.out, "Output directory");
  auto* run_train_len_opt = run->add_option("--train-len", run_gen.train_len, "Training timesteps");
  auto* run_test_len_opt = run->add_option("--test-len", run_gen.test_len, "Test timesteps");
  auto* run_epochs_opt = run->add_option("--epochs", run_train.epochs, "Training epochs");
  auto* run_hidden_opt = run->add_option("--hidden", run_train.hidden, "Hidden units");
  auto* run_window_opt = run->add_option("--window", run_train.window, "Input window length");
  auto* run_lr_opt = run->add_option("--lr", run_train.learning_rate, "Learning rate");
  auto* run_t_opt = run->add_option("--t", run_t, "Timestep to forecast from");
  run->add_flag("--include-second-ring", run_second_ring,
                "Admit the middle triangle of each shared wedge");
  run->add_flag("--svg", run_svg, "Write before/after SVGs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      if (len_opt->count()) gen_args.length = gen_length;
      gen_stage(gen_args);
    } else if (train->parsed()) {
      train_stage(train_args);
    } else if (predict->parsed()) {
      if (t_opt->count()) predict_args.t = predict_t;
      predict_stage(predict_args);
    } else if (balance->parsed()) {
      balance_stage(balance_args);
    } else if (report->parsed()) {
      report_stage(report_input, report_before, report_after);
    } else if (run->parsed()) {
      bool seed_set = run_seed_opt->count() > 0;
      if (!run_config.empty()) {
        const json j = json::parse(std::ifstream(run_config), nullptr, false);
        if (j.is_discarded())
          throw hexlb::DataError("invalid config file " + run_config);
        if (!run_layout_opt->count() && j.contains("layout"))
          run_gen.layout = j["layout"].get<std::string>();
        if (!run_out_opt->count() && j.contains("out"))
          run_gen.out = j["out"].get<std::string>();
        if (!seed_set && j.contains("seed")) {
          run_seed = j["seed"].get<std::uint64_t>();
          seed_set = true;
        }
        if (!run_train_len_opt->count() && j.contains("train_len"))
          run_gen.train_len = j["train_len"].get<int>();
        if (!run_test_len_opt->count() && j.contains("test_len"))
          run_gen.test_len = j["test_len"].get<int>();
        if (!run_epochs_opt->count() && j.contains("epochs"))
          run_train.epochs = j["epochs"].get<int>();
        if (!run_hidden_opt->count() && j.contains("hidden"))
          run_train.hidden = j["hidden"].get<int>();
        if (!run_window_opt->count() && j.contains("window"))
          run_train.window = j["window"].get<int>();
        if (!run_lr_opt->count() && j.contains("learning_rate"))
          run_train.learning_rate = j["learning_rate"].get<double>();
        if (!run_t_opt->count() && j.contains("t"))
          run_t = j["t"].get<int>();
        else if (!run_t_opt->count())
          run_t = -1;
        if (j.contains("include_second_ring"))
          run_second_ring = run_second_ring || j["include_second_ring"].get<bool>();
        if (j.contains("svg")) run_svg = run_svg || j["svg"].get<bool>();
      } else if (!run_t_opt->count()) {
        run_t = -1;
      }
      if (!seed_set)
        throw hexlb::DataError("run needs --seed or a config with one");
      if (run_gen.out.empty())
        throw hexlb::DataError("run needs --out or a config with one");

      run_gen.seed = run_seed;
      gen_stage(run_gen);

      TrainArgs t_args;
      t_args.data = run_gen.out;
      t_args.out = run_gen.out;
      t_args.seed = run_seed;
      t_args.cfg = run_train;
      train_stage(t_args);

      PredictArgs p_args;
      p_args.data = run_gen.out;
      p_args.models = run_gen.out;
      p_args.out = run_gen.out;
      if (run_t >= 0) p_args.t = run_t;
      predict_stage(p_args);

      BalanceArgs b_args;
      b_args.scores = (fs::path(run_gen.out) / "forecast.csv").string();
      b_args.layout = run_gen.layout;
      b_args.out = run_gen.out;
      b_args.include_second_ring = run_second_ring;
      b_args.svg = run_svg;
      balance_stage(b_args);
    }
  } catch (const hexlb::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const hexlb::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const hexlb::OverlapError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const hexlb::GeometryError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
