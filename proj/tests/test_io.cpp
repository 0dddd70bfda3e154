#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "obisim/engine.hpp"
#include "obisim/io.hpp"
#include "obisim/metrics.hpp"

using namespace obisim;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* tag) {
  const fs::path dir = fs::temp_directory_path() / (std::string("obisim_test_") + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool mentions(const std::vector<std::string>& errors, const std::string& needle) {
  for (const auto& e : errors) {
    if (e.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("an empty config keeps the standard parameter set") {
  SimConfig cfg;
  std::vector<std::string> errors;
  const auto kv = parse_config_text("", errors);
  CHECK(errors.empty());
  CHECK(apply_key_values(cfg, kv).empty());
  CHECK(cfg.fundamental_price == 10000);
  CHECK(cfg.t_end == 400000);
  CHECK(cfg.t_cancel == 20000);
  CHECK(cfg.w2_max == 10.0);
  CHECK(cfg.sigma_eps == 0.06);
  CHECK(cfg.k_learn == 4.0);
  CHECK(cfg.delta_learn == 0.01);
  CHECK(cfg.n_normal_agents == 990);
  CHECK(cfg.algo.count == 10);
  CHECK(validate(cfg).empty());
}

TEST_CASE("validation names the offending field") {
  SimConfig cfg;
  cfg.t_cancel = 0;
  CHECK(mentions(validate(cfg), "t_cancel"));

  SimConfig cfg2;
  cfg2.scenario.kind = ScenarioKind::Crash;
  cfg2.scenario.forced_order_probability = 1.5;
  CHECK(mentions(validate(cfg2), "forced_order_probability"));
}

TEST_CASE("unknown keys and bad values are rejected") {
  SimConfig cfg;
  std::vector<std::string> parse_errors;
  const auto kv = parse_config_text("t_end = 1000\nbogus_key = 7\nsigma_eps = banana\n",
                                    parse_errors);
  CHECK(parse_errors.empty());
  const auto errors = apply_key_values(cfg, kv);
  CHECK(mentions(errors, "bogus_key"));
  CHECK(mentions(errors, "sigma_eps"));
  CHECK(cfg.t_end == 1000);
}

TEST_CASE("config file syntax errors carry line numbers") {
  std::vector<std::string> errors;
  parse_config_text("t_end = 5\nnot a pair\n", errors);
  REQUIRE(errors.size() == 1);
  CHECK(mentions(errors, "line 2"));
}

TEST_CASE("canonical config text round-trips exactly") {
  SimConfig cfg;
  cfg.scenario.kind = ScenarioKind::Spoof;
  cfg.algo.kind = AlgoKind::OAA;
  cfg.algo.decision_interval = 123;
  cfg.sigma_eps = 0.07;
  cfg.seed = 99;
  const std::string text = to_canonical_string(cfg);

  SimConfig parsed;
  std::vector<std::string> errors;
  const auto kv = parse_config_text(text, errors);
  CHECK(errors.empty());
  CHECK(apply_key_values(parsed, kv).empty());
  CHECK(parsed == cfg);
  CHECK(config_hash(parsed) == config_hash(cfg));
}

TEST_CASE("config hash tracks every field") {
  SimConfig a;
  SimConfig b;
  b.scenario.spoof_count = 999;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("run artifacts reload to the same metrics and rewrite byte-identically") {
  SimConfig cfg;
  cfg.t_end = 30000;
  cfg.n_normal_agents = 200;
  cfg.algo.kind = AlgoKind::OAA;
  cfg.algo.start_time = 10000;
  cfg.algo.decision_interval = 40;
  cfg.seed = 6;
  const RunResult run = run_simulation(cfg);

  const fs::path dir = temp_dir("roundtrip");
  const fs::path run_dir = run_directory(dir, cfg);
  CHECK(run_dir == dir / "stable" / "oaa" / "6");
  write_run_result(run_dir, cfg, run, true);

  const PersistedRun loaded = load_run_result(run_dir);
  CHECK(loaded.cfg == cfg);
  CHECK(loaded.run == run);
  CHECK(compute_metrics(loaded.cfg, loaded.run) == compute_metrics(cfg, run));
  CHECK(summary_json_text(loaded.cfg, loaded.run) == slurp(run_dir / "summary.json"));

  const std::string before = slurp(run_dir / "priceSeries.csv") + slurp(run_dir / "trades.csv") +
                             slurp(run_dir / "summary.json");
  write_run_result(run_dir, cfg, run, true);
  const std::string after = slurp(run_dir / "priceSeries.csv") + slurp(run_dir / "trades.csv") +
                            slurp(run_dir / "summary.json");
  CHECK(before == after);

  fs::remove_all(dir);
}

TEST_CASE("artifacts embed the config hash and seed") {
  SimConfig cfg;
  cfg.t_end = 2000;
  cfg.n_normal_agents = 50;
  cfg.seed = 17;
  const RunResult run = run_simulation(cfg);
  const fs::path dir = temp_dir("comment");
  write_run_result(dir / "r", cfg, run, true);
  const std::string head = slurp(dir / "r" / "priceSeries.csv").substr(0, 120);
  CHECK(head.find(config_hash(cfg)) != std::string::npos);
  CHECK(head.find("seed=17") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("trade tape CSV columns follow the documented order") {
  SimConfig cfg;
  cfg.t_end = 5000;
  cfg.n_normal_agents = 100;
  cfg.seed = 2;
  const RunResult run = run_simulation(cfg);
  REQUIRE(!run.trades.empty());
  const fs::path dir = temp_dir("tape");
  write_run_result(dir / "r", cfg, run, true);
  std::istringstream tape(slurp(dir / "r" / "trades.csv"));
  std::string comment, header;
  std::getline(tape, comment);
  std::getline(tape, header);
  CHECK(header == "time,price,buyerOwner,sellerOwner,buyOrderId,sellOrderId");
  fs::remove_all(dir);
}

TEST_CASE("experiment reports serialize with per-regime stats") {
  SimConfig base;
  base.t_end = 20000;
  base.n_normal_agents = 100;
  base.algo.start_time = 5000;
  const std::vector<TimeStep> grid{100};
  const std::vector<std::string> labels{"default"};
  const auto seeds = default_seed_list(2);
  const ExperimentReport report = run_experiment(base, grid, labels, seeds, 2);
  REQUIRE(report.regimes.size() == 1);
  CHECK(report.regimes[0].oaa.runs.size() == 2);
  CHECK(report.regimes[0].aa.orders.mean > 0);

  const fs::path dir = temp_dir("experiment");
  write_experiment_report(dir, report);
  write_sweep_csv(dir / "sweep.csv", report);
  CHECK(fs::exists(dir / "stable" / "experiment.json"));
  CHECK(fs::exists(dir / "stable" / "experiment_summary.csv"));
  const std::string table = experiment_table_text(report);
  CHECK(table.find("scenario: stable") != std::string::npos);
  CHECK(table.find("oaa") != std::string::npos);
  fs::remove_all(dir);
}
