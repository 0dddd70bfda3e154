#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "obisim/config.hpp"
#include "obisim/engine.hpp"
#include "obisim/metrics.hpp"

namespace obisim {

// Per-run reduction kept by batch experiments instead of full traces.
struct RunSummary {
  std::uint64_t seed = 0;
  long long algo_orders = 0;
  MetricsSummary metrics;
  // Average market price over [first fill, last fill] when fills exist.
  std::optional<double> fill_interval_avg_price;
  // Crash analysis: share of fills inside [window_start, price nadir]
  // versus that interval's share of the algorithm's active time.
  std::optional<double> fall_fill_fraction;
  std::optional<double> fall_time_fraction;
};

RunSummary summarize_run(const SimConfig& cfg, const RunResult& run);

struct SampleStats {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 when n < 2
  int n = 0;
};

SampleStats sample_stats(std::span<const double> values);

struct AlgoSideStats {
  TimeStep interval = 0;
  SampleStats orders;
  SampleStats tc;
  SampleStats avg_price;
  std::vector<RunSummary> runs;
};

// One paired AA/OAA comparison at a fixed OAA decision interval.
struct RegimeResult {
  std::string label;
  long long implied_aa_count = 0;
  AlgoSideStats oaa;
  AlgoSideStats aa;
};

struct ExperimentReport {
  ScenarioKind scenario = ScenarioKind::Stable;
  std::vector<RegimeResult> regimes;
  std::vector<std::uint64_t> seeds;
  std::string config_hash;  // hash of the base config (algo fields zeroed)
};

// Called once per finished run, serialized by an internal lock; lets the
// caller persist run artifacts without retaining full traces.
using RunSink =
    std::function<void(const SimConfig& run_cfg, const RunResult& run, const std::string& label)>;

// Two-phase protocol per grid point: run the OAAs, take their mean order
// count, derive the AA interval that matches it, run the AAs. The same
// seed list drives both phases.
ExperimentReport run_experiment(const SimConfig& base, std::span<const TimeStep> oaa_grid,
                                std::span<const std::string> labels,
                                std::span<const std::uint64_t> seeds, int workers,
                                const RunSink& sink = {});

// Summaries of one algorithm side at a fixed config (used for baselines).
std::vector<RunSummary> run_batch_summaries(const SimConfig& cfg,
                                            std::span<const std::uint64_t> seeds, int workers,
                                            const RunSink& sink = {},
                                            const std::string& label = "");

// Default OAA decision-interval grid per scenario. Stable markets get the
// low/high pair whose order counts land near the reference table; the
// other scenarios use the low-frequency point.
std::vector<TimeStep> default_oaa_grid(ScenarioKind scenario);
std::vector<std::string> default_grid_labels(ScenarioKind scenario);

// Wider stable-market grid for the trading-cost-versus-order-count sweep.
std::vector<TimeStep> default_sweep_grid();

}  // namespace obisim
