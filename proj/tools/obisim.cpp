// obisim: artificial-market simulator comparing conventional and
// order-book-imbalance execution algorithms across market environments.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "obisim/engine.hpp"
#include "obisim/errors.hpp"
#include "obisim/experiment.hpp"
#include "obisim/io.hpp"
#include "obisim/metrics.hpp"
#include "obisim/version.hpp"

namespace fs = std::filesystem;
using namespace obisim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitMissingFile = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitReportMismatch = 5;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  int seed_count = 25;
  std::string seed_list;
  std::vector<std::string> overrides;  // key=value pairs from flags
};

void add_config_flags(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "config file (key = value lines)");
  cmd->add_option("--out-dir", opts.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--workers", opts.workers, "parallel run workers")->capture_default_str();
  for (const ConfigField& field : config_fields()) {
    if (field.key == "seed") continue;  // run/batch commands own the seed flags
    std::string flag = "--" + field.key;
    for (auto& c : flag) {
      if (c == '_') c = '-';
    }
    const std::string key = field.key;
    cmd->add_option_function<std::string>(
        flag,
        [&opts, key](const std::string& value) { opts.overrides.push_back(key + "=" + value); },
        field.description);
  }
}

void add_seed_flags(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--seeds", opts.seed_count, "number of seeds, run as 1..N")
      ->capture_default_str();
  cmd->add_option("--seed-list", opts.seed_list, "explicit comma-separated seed list");
}

// Defaults, then the config file, then flag overrides; exits on violations.
SimConfig resolve_config(const CommonOptions& opts) {
  SimConfig cfg;
  std::vector<std::string> errors;
  if (!opts.config_path.empty()) {
    const auto kv = load_config_file(opts.config_path, errors);
    if (!errors.empty()) {
      for (const auto& e : errors) std::cerr << "config: " << e << "\n";
      std::exit(errors.front().rfind("cannot open", 0) == 0 ? kExitMissingFile
                                                            : kExitBadConfig);
    }
    errors = apply_key_values(cfg, kv);
  }
  for (const auto& pair : opts.overrides) {
    const auto eq = pair.find('=');
    const std::map<std::string, std::string> one{{pair.substr(0, eq), pair.substr(eq + 1)}};
    for (const auto& e : apply_key_values(cfg, one)) errors.push_back(e);
  }
  for (const auto& e : validate(cfg)) errors.push_back(e);
  if (!errors.empty()) {
    for (const auto& e : errors) std::cerr << "config: " << e << "\n";
    std::exit(kExitBadConfig);
  }
  return cfg;
}

std::vector<std::uint64_t> resolve_seeds(const CommonOptions& opts) {
  if (opts.seed_list.empty()) return default_seed_list(opts.seed_count);
  std::vector<std::uint64_t> seeds;
  std::string token;
  for (char c : opts.seed_list + ",") {
    if (c == ',') {
      if (!token.empty()) seeds.push_back(std::stoull(token));
      token.clear();
    } else {
      token += c;
    }
  }
  if (seeds.empty()) {
    std::cerr << "config: empty seed list\n";
    std::exit(kExitBadConfig);
  }
  return seeds;
}

void print_summary_line(const RunSummary& s) {
  std::printf("seed=%llu orders=%lld tc=%s avg_price=%.2f concordance=%lld\n",
              static_cast<unsigned long long>(s.seed), s.algo_orders,
              s.metrics.tc ? format_double(*s.metrics.tc).c_str() : "n/a", s.metrics.avg_price,
              s.metrics.obi_concordance);
}

int cmd_run(const CommonOptions& opts, std::uint64_t seed, bool full_series,
            bool dump_weights) {
  SimConfig cfg = resolve_config(opts);
  cfg.seed = seed;
  std::unique_ptr<WeightDumpObserver> dump;
  if (dump_weights) {
    dump = std::make_unique<WeightDumpObserver>("# " + std::string(kToolName) + " " +
                                                kToolVersion + " config=" + config_hash(cfg) +
                                                " seed=" + std::to_string(cfg.seed) + "\n");
  }
  const RunResult run = run_simulation(cfg, dump.get());
  const fs::path dir = run_directory(opts.out_dir, cfg);
  write_run_result(dir, cfg, run, full_series);
  if (dump) dump->write_to(dir / "weights.csv");
  print_summary_line(summarize_run(cfg, run));
  std::printf("wrote %s\n", dir.string().c_str());
  return kExitOk;
}

int cmd_batch(const CommonOptions& opts, bool full_series) {
  const SimConfig cfg = resolve_config(opts);
  const auto seeds = resolve_seeds(opts);
  std::mutex io_mutex;
  const auto summaries = run_batch_summaries(
      cfg, seeds, opts.workers,
      [&](const SimConfig& run_cfg, const RunResult& run, const std::string&) {
        std::lock_guard lock(io_mutex);
        write_run_result(run_directory(opts.out_dir, run_cfg), run_cfg, run, full_series);
      });
  for (const auto& s : summaries) print_summary_line(s);
  return kExitOk;
}

std::vector<TimeStep> parse_grid(const std::string& text) {
  std::vector<TimeStep> grid;
  std::string token;
  for (char c : text + ",") {
    if (c == ',') {
      if (!token.empty()) grid.push_back(std::stoll(token));
      token.clear();
    } else {
      token += c;
    }
  }
  return grid;
}

int run_experiment_command(const CommonOptions& opts, const std::vector<TimeStep>& grid,
                           const std::vector<std::string>& labels, bool emit_sweep) {
  const SimConfig base = resolve_config(opts);
  const auto seeds = resolve_seeds(opts);
  std::mutex io_mutex;
  const ExperimentReport report = run_experiment(
      base, grid, labels, seeds, opts.workers,
      [&](const SimConfig& run_cfg, const RunResult& run, const std::string& label) {
        std::lock_guard lock(io_mutex);
        write_run_result(run_directory(opts.out_dir, run_cfg, label), run_cfg, run, false);
      });
  write_experiment_report(opts.out_dir, report);
  if (emit_sweep) {
    write_sweep_csv(fs::path(opts.out_dir) / to_string(base.scenario.kind) / "tc_vs_orders.csv",
                    report);
  }
  std::fputs(experiment_table_text(report).c_str(), stdout);
  return kExitOk;
}

int cmd_report(const std::string& run_dir, bool check) {
  for (const char* f : {"config.cfg", "summary.json", "priceSeries.csv", "depth.csv",
                        "trades.csv", "fills.csv"}) {
    if (!fs::exists(fs::path(run_dir) / f)) {
      std::cerr << "report: missing " << f << " in " << run_dir
                << " (full-series run directory required)\n";
      return kExitMissingFile;
    }
  }
  const PersistedRun loaded = load_run_result(run_dir);
  const std::string recomputed = summary_json_text(loaded.cfg, loaded.run);
  std::fputs(recomputed.c_str(), stdout);
  if (check) {
    std::ifstream in(fs::path(run_dir) / "summary.json", std::ios::binary);
    std::ostringstream stored;
    stored << in.rdbuf();
    if (stored.str() != recomputed) {
      std::cerr << "report: recomputed metrics differ from stored summary.json\n";
      return kExitReportMismatch;
    }
    std::cerr << "report: stored summary matches recomputation\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kToolName) + " " + kToolVersion +
               " - artificial-market execution-algorithm simulator"};
  app.require_subcommand(1);

  CommonOptions run_opts, batch_opts, exp_opts, sweep_opts;
  std::uint64_t run_seed = 1;
  bool run_no_series = false;
  bool dump_weights = false;
  bool batch_full = false;
  std::string exp_grid, sweep_grid;
  std::string report_dir;
  bool report_check = false;

  CLI::App* run = app.add_subcommand("run", "single simulation run");
  add_config_flags(run, run_opts);
  run->add_option("--seed", run_seed, "run seed")->capture_default_str();
  run->add_flag("--no-series", run_no_series, "skip full per-step CSV series");
  run->add_flag("--dump-weights", dump_weights,
                "debug: per-turn agent weight trajectories to weights.csv");

  CLI::App* batch = app.add_subcommand("batch", "independent runs over a seed list");
  add_config_flags(batch, batch_opts);
  add_seed_flags(batch, batch_opts);
  batch->add_flag("--full-series", batch_full, "persist full per-step CSV series per run");

  CLI::App* experiment =
      app.add_subcommand("experiment", "paired AA/OAA comparison with order-count matching");
  add_config_flags(experiment, exp_opts);
  add_seed_flags(experiment, exp_opts);
  experiment->add_option("--grid", exp_grid,
                         "comma-separated OAA decision intervals (default per scenario)");

  CLI::App* sweep = app.add_subcommand("sweep", "trading cost versus order count sweep");
  add_config_flags(sweep, sweep_opts);
  add_seed_flags(sweep, sweep_opts);
  sweep->add_option("--intervals", sweep_grid, "comma-separated OAA decision intervals");

  CLI::App* report = app.add_subcommand("report", "recompute metrics from a persisted run");
  report->add_option("--run-dir", report_dir, "run directory")->required();
  report->add_flag("--check", report_check, "fail unless recomputation matches stored summary");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_opts, run_seed, !run_no_series, dump_weights);
    if (batch->parsed()) return cmd_batch(batch_opts, batch_full);
    if (experiment->parsed()) {
      const SimConfig probe = resolve_config(exp_opts);
      const std::vector<TimeStep> grid =
          exp_grid.empty() ? default_oaa_grid(probe.scenario.kind) : parse_grid(exp_grid);
      std::vector<std::string> labels;
      if (exp_grid.empty()) {
        labels = default_grid_labels(probe.scenario.kind);
      } else {
        for (TimeStep l : grid) labels.push_back("l" + std::to_string(l));
      }
      return run_experiment_command(exp_opts, grid, labels, false);
    }
    if (sweep->parsed()) {
      const std::vector<TimeStep> grid =
          sweep_grid.empty() ? default_sweep_grid() : parse_grid(sweep_grid);
      std::vector<std::string> labels;
      for (TimeStep l : grid) labels.push_back("l" + std::to_string(l));
      return run_experiment_command(sweep_opts, grid, labels, true);
    }
    if (report->parsed()) return cmd_report(report_dir, report_check);
  } catch (const InfeasibleTarget& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
