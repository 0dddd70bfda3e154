#pragma once

#include <filesystem>
#include <string>

#include "obisim/config.hpp"
#include "obisim/engine.hpp"
#include "obisim/experiment.hpp"
#include "obisim/metrics.hpp"

namespace obisim {

// Run directories hold config.cfg, summary.json and, with full_series,
// priceSeries.csv, depth.csv, trades.csv and fills.csv. Every file embeds
// the config hash and seed; writing the same run twice produces identical
// bytes.

std::filesystem::path run_directory(const std::filesystem::path& out_dir, const SimConfig& cfg,
                                    const std::string& regime_label = "");

void write_run_result(const std::filesystem::path& dir, const SimConfig& cfg,
                      const RunResult& run, bool full_series);

// Reloads a run written with full_series; config.cfg restores the exact
// configuration. Throws std::runtime_error on missing or malformed files.
struct PersistedRun {
  SimConfig cfg;
  RunResult run;
};
PersistedRun load_run_result(const std::filesystem::path& dir);

std::string summary_json_text(const SimConfig& cfg, const RunResult& run);

void write_experiment_report(const std::filesystem::path& out_dir,
                             const ExperimentReport& report);

// Figure-style data: mean order count versus mean trading cost per regime.
void write_sweep_csv(const std::filesystem::path& path, const ExperimentReport& report);

std::string experiment_table_text(const ExperimentReport& report);

// Per-agent weight trajectories (t, agent, w1, w2) behind the CLI debug
// flag.
class WeightDumpObserver : public StepObserver {
 public:
  explicit WeightDumpObserver(std::string header_comment);
  void on_na_turn(TimeStep t, int agent_index, const NormalAgentState& post_learn, bool forced,
                  const std::optional<Order>& placed) override;
  void write_to(const std::filesystem::path& path) const;

 private:
  std::string buffer_;
};

}  // namespace obisim
