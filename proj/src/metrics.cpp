#include "obisim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "obisim/errors.hpp"

namespace obisim {

std::vector<double> sampled_log_returns(std::span<const Tick> prices, Tick p0,
                                        TimeStep interval) {
  std::vector<double> returns;
  if (interval < 1 || prices.empty()) return returns;
  returns.reserve(prices.size() / static_cast<std::size_t>(interval) + 1);
  double prev = static_cast<double>(p0);
  for (std::size_t idx = static_cast<std::size_t>(interval) - 1; idx < prices.size();
       idx += static_cast<std::size_t>(interval)) {
    const double sample = static_cast<double>(prices[idx]);
    returns.push_back(std::log(sample / prev));
    prev = sample;
  }
  return returns;
}

double trading_cost(std::span<const FillRecord> fills, Tick fundamental_price) {
  if (fills.empty()) throw NoFills("trading cost over zero purchases");
  double sum = 0.0;
  for (const FillRecord& f : fills) {
    sum += static_cast<double>(f.price - fundamental_price);
  }
  return sum / static_cast<double>(fills.size());
}

double excess_kurtosis(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 4) throw DegenerateSeries("kurtosis needs at least 4 samples");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double m2 = 0.0;
  double m4 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  m2 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  if (m2 == 0.0) throw DegenerateSeries("kurtosis of a constant series");
  return m4 / (m2 * m2) - 3.0;
}

namespace {

double pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateSeries("autocorrelation of a constant series");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

std::array<double, 5> sq_return_autocorr(std::span<const double> returns) {
  constexpr std::size_t kMaxLag = 5;
  if (returns.size() <= kMaxLag + 1) {
    throw DegenerateSeries("series too short for lag-5 autocorrelation");
  }
  std::vector<double> sq(returns.size());
  for (std::size_t i = 0; i < returns.size(); ++i) sq[i] = returns[i] * returns[i];
  std::array<double, 5> acf{};
  for (std::size_t lag = 1; lag <= kMaxLag; ++lag) {
    const std::size_t n = sq.size() - lag;
    acf[lag - 1] = pearson({sq.data(), n}, {sq.data() + lag, n});
  }
  return acf;
}

long long obi_concordance(std::span<const DepthSample> depths, std::span<const Tick> prices) {
  long long concordant = 0;
  long long discordant = 0;
  const std::size_t n = std::min(depths.size(), prices.size());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const long long obi =
        static_cast<long long>(depths[i].buy) - static_cast<long long>(depths[i].sell);
    if (obi == 0) continue;
    const Tick dp = prices[i + 1] - prices[i];
    if (dp == 0) continue;
    if ((obi > 0) == (dp > 0)) {
      ++concordant;
    } else {
      ++discordant;
    }
  }
  return concordant - discordant;
}

IntervalStats interval_averages(const RunResult& run, TimeStep t_a, TimeStep t_b) {
  if (t_a >= t_b) throw EmptyInterval("interval start must be before its end");
  const TimeStep t_end = static_cast<TimeStep>(run.prices.size());
  if (t_a < 0 || t_b > t_end + 1) throw std::invalid_argument("interval outside the run");
  const TimeStep first = std::max<TimeStep>(t_a, 1);
  if (first >= t_b) throw EmptyInterval("interval contains no recorded step");
  IntervalStats stats;
  for (TimeStep t = first; t < t_b; ++t) {
    const std::size_t i = static_cast<std::size_t>(t - 1);
    stats.avg_price += static_cast<double>(run.prices[i]);
    stats.avg_buy_depth += static_cast<double>(run.depths[i].buy);
    stats.avg_sell_depth += static_cast<double>(run.depths[i].sell);
  }
  const double n = static_cast<double>(t_b - first);
  stats.avg_price /= n;
  stats.avg_buy_depth /= n;
  stats.avg_sell_depth /= n;
  return stats;
}

MetricsSummary compute_metrics(const SimConfig& cfg, const RunResult& run) {
  MetricsSummary m;
  m.n_trades = static_cast<long long>(run.trades.size());
  m.n_fills = static_cast<long long>(run.fills.size());

  if (!run.fills.empty()) m.tc = trading_cost(run.fills, cfg.fundamental_price);
  if (!run.trades.empty()) {
    double sum = 0.0;
    for (const Trade& trade : run.trades) sum += static_cast<double>(trade.price);
    m.mean_trade_price = sum / static_cast<double>(run.trades.size());
  }

  const auto returns = sampled_log_returns(run.prices, cfg.fundamental_price,
                                           cfg.return_sampling_interval);
  try {
    m.kurtosis = excess_kurtosis(returns);
  } catch (const DegenerateSeries&) {
  }
  try {
    m.acf_sq_returns = sq_return_autocorr(returns);
  } catch (const DegenerateSeries&) {
  }

  m.obi_concordance = obi_concordance(run.depths, run.prices);
  if (!run.prices.empty()) {
    const IntervalStats whole =
        interval_averages(run, 1, static_cast<TimeStep>(run.prices.size()) + 1);
    m.avg_price = whole.avg_price;
    m.avg_buy_depth = whole.avg_buy_depth;
    m.avg_sell_depth = whole.avg_sell_depth;
  }
  return m;
}

}  // namespace obisim
