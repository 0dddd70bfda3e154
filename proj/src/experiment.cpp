#include "obisim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "obisim/errors.hpp"
#include "obisim/execution.hpp"

namespace obisim {

RunSummary summarize_run(const SimConfig& cfg, const RunResult& run) {
  RunSummary s;
  s.seed = run.seed;
  s.algo_orders = run.counts.algo_fills;
  s.metrics = compute_metrics(cfg, run);

  if (!run.fills.empty()) {
    const TimeStep first = run.fills.front().time;
    const TimeStep last = run.fills.back().time;
    s.fill_interval_avg_price = interval_averages(run, first, last + 1).avg_price;
  }

  if (cfg.scenario.kind == ScenarioKind::Crash && !run.prices.empty()) {
    const TimeStep t_end = static_cast<TimeStep>(run.prices.size());
    const TimeStep from = std::clamp<TimeStep>(cfg.scenario.window_start, 1, t_end);
    TimeStep nadir = from;
    Tick low = run.prices[static_cast<std::size_t>(from - 1)];
    for (TimeStep t = from; t <= t_end; ++t) {
      const Tick p = run.prices[static_cast<std::size_t>(t - 1)];
      if (p < low) {
        low = p;
        nadir = t;
      }
    }
    const TimeStep active_start = std::clamp<TimeStep>(cfg.algo.start_time, 1, t_end);
    const TimeStep active_len = t_end - active_start + 1;
    const TimeStep overlap =
        std::max<TimeStep>(0, std::min(nadir, t_end) - std::max(from, active_start) + 1);
    if (active_len > 0) {
      s.fall_time_fraction = static_cast<double>(overlap) / static_cast<double>(active_len);
    }
    if (!run.fills.empty()) {
      long long inside = 0;
      for (const FillRecord& f : run.fills) {
        if (f.time >= from && f.time <= nadir) ++inside;
      }
      s.fall_fill_fraction =
          static_cast<double>(inside) / static_cast<double>(run.fills.size());
    }
  }
  return s;
}

SampleStats sample_stats(std::span<const double> values) {
  SampleStats stats;
  stats.n = static_cast<int>(values.size());
  if (values.empty()) return stats;
  double sum = 0.0;
  for (double v : values) sum += v;
  stats.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) {
      const double d = v - stats.mean;
      ss += d * d;
    }
    stats.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return stats;
}

std::vector<RunSummary> run_batch_summaries(const SimConfig& cfg,
                                            std::span<const std::uint64_t> seeds, int workers,
                                            const RunSink& sink, const std::string& label) {
  std::vector<RunSummary> summaries(seeds.size());
  std::mutex collect;
  run_batch_apply(cfg, seeds, workers, [&](std::size_t i, RunResult&& run) {
    SimConfig run_cfg = cfg;
    run_cfg.seed = seeds[i];
    RunSummary s = summarize_run(run_cfg, run);
    std::lock_guard lock(collect);
    summaries[i] = std::move(s);
    if (sink) sink(run_cfg, run, label);
  });
  return summaries;
}

namespace {

AlgoSideStats side_stats(TimeStep interval, std::vector<RunSummary> runs) {
  AlgoSideStats side;
  side.interval = interval;
  std::vector<double> orders, tc, price;
  orders.reserve(runs.size());
  for (const RunSummary& r : runs) {
    orders.push_back(static_cast<double>(r.algo_orders));
    if (r.metrics.tc) tc.push_back(*r.metrics.tc);
    price.push_back(r.metrics.avg_price);
  }
  side.orders = sample_stats(orders);
  side.tc = sample_stats(tc);
  side.avg_price = sample_stats(price);
  side.runs = std::move(runs);
  return side;
}

}  // namespace

ExperimentReport run_experiment(const SimConfig& base, std::span<const TimeStep> oaa_grid,
                                std::span<const std::string> labels,
                                std::span<const std::uint64_t> seeds, int workers,
                                const RunSink& sink) {
  ExperimentReport report;
  report.scenario = base.scenario.kind;
  report.seeds.assign(seeds.begin(), seeds.end());
  {
    SimConfig canonical = base;
    canonical.algo.kind = AlgoKind::None;
    canonical.seed = 0;
    report.config_hash = config_hash(canonical);
  }

  for (std::size_t g = 0; g < oaa_grid.size(); ++g) {
    RegimeResult regime;
    regime.label = g < labels.size() ? labels[g] : "grid" + std::to_string(g);

    SimConfig oaa_cfg = base;
    oaa_cfg.algo.kind = AlgoKind::OAA;
    oaa_cfg.algo.decision_interval = oaa_grid[g];
    std::vector<RunSummary> oaa_runs =
        run_batch_summaries(oaa_cfg, seeds, workers, sink, regime.label);

    std::vector<long long> counts;
    counts.reserve(oaa_runs.size());
    for (const RunSummary& r : oaa_runs) counts.push_back(r.algo_orders);
    const Equalization eq =
        equalize_order_counts(counts, base.algo.start_time, base.t_end);
    regime.implied_aa_count = eq.implied_aa_count;

    SimConfig aa_cfg = base;
    aa_cfg.algo.kind = AlgoKind::AA;
    aa_cfg.algo.decision_interval = eq.aa_interval;
    std::vector<RunSummary> aa_runs =
        run_batch_summaries(aa_cfg, seeds, workers, sink, regime.label);

    regime.oaa = side_stats(oaa_grid[g], std::move(oaa_runs));
    regime.aa = side_stats(eq.aa_interval, std::move(aa_runs));
    report.regimes.push_back(std::move(regime));
  }
  return report;
}

std::vector<TimeStep> default_oaa_grid(ScenarioKind scenario) {
  switch (scenario) {
    case ScenarioKind::Stable:
      return {550, 25};  // low-frequency point and the TC-reversal region
    case ScenarioKind::Spoof:
      return {50};  // parity region: spoof damage offsets the OAA edge
    case ScenarioKind::Crash:
    case ScenarioKind::Surge:
      break;
  }
  return {550};
}

std::vector<std::string> default_grid_labels(ScenarioKind scenario) {
  if (scenario == ScenarioKind::Stable) return {"low", "high"};
  return {"default"};
}

std::vector<TimeStep> default_sweep_grid() { return {550, 170, 50, 25}; }

}  // namespace obisim
