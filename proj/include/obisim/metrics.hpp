#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "obisim/config.hpp"
#include "obisim/engine.hpp"
#include "obisim/types.hpp"

namespace obisim {

// Log returns of the price series sampled every `interval` steps, seeded
// with the initial price p0 at t = 0.
std::vector<double> sampled_log_returns(std::span<const Tick> prices, Tick p0,
                                        TimeStep interval);

// Mean deviation of algorithm-agent buy prices from the fundamental,
// aggregated over all algorithm agents. Throws NoFills on an empty set.
double trading_cost(std::span<const FillRecord> fills, Tick fundamental_price);

// Fourth standardized central moment minus 3 (excess convention, normal
// = 0), using population moments. Throws DegenerateSeries when fewer than
// four samples or zero variance.
double excess_kurtosis(std::span<const double> values);

// Pearson correlation between the squared-return series and its lagged
// copy, lags 1..5. Throws DegenerateSeries when a lagged pair series is
// too short or has zero variance.
std::array<double, 5> sq_return_autocorr(std::span<const double> returns);

// Concordant-minus-discordant count between the OBI sign at t and the
// price change sign from t to t+1. Zero OBI or an unchanged price counts
// toward neither.
long long obi_concordance(std::span<const DepthSample> depths, std::span<const Tick> prices);

struct IntervalStats {
  double avg_price = 0.0;
  double avg_buy_depth = 0.0;
  double avg_sell_depth = 0.0;
};

// Arithmetic means of the recorded series over steps in [t_a, t_b)
// (recorded steps run 1..t_end). Throws EmptyInterval when the interval
// contains no recorded step.
IntervalStats interval_averages(const RunResult& run, TimeStep t_a, TimeStep t_b);

struct MetricsSummary {
  std::optional<double> tc;
  std::optional<double> kurtosis;
  std::optional<std::array<double, 5>> acf_sq_returns;
  long long obi_concordance = 0;
  double avg_price = 0.0;
  double avg_buy_depth = 0.0;
  double avg_sell_depth = 0.0;
  std::optional<double> mean_trade_price;
  long long n_trades = 0;
  long long n_fills = 0;

  friend bool operator==(const MetricsSummary&, const MetricsSummary&) = default;
};

// All metrics derivable from a persisted RunResult; recomputing from disk
// reproduces the run-time values bit for bit.
MetricsSummary compute_metrics(const SimConfig& cfg, const RunResult& run);

}  // namespace obisim
