#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "obisim/errors.hpp"
#include "obisim/metrics.hpp"
#include "obisim/rng.hpp"

using namespace obisim;

TEST_CASE("trading cost is the mean deviation from the fundamental") {
  const std::vector<FillRecord> fills{{100001, 10010, 1}, {100002, 10020, 2}};
  CHECK(trading_cost(fills, 10000) == doctest::Approx(15.0));

  const std::vector<FillRecord> at_pf{{1, 10000, 1}, {2, 10000, 2}, {3, 10000, 3}};
  CHECK(trading_cost(at_pf, 10000) == 0.0);

  const std::vector<FillRecord> below{{1, 9500, 1}};
  CHECK(trading_cost(below, 10000) == doctest::Approx(-500.0));

  const std::vector<FillRecord> none;
  CHECK_THROWS_AS(trading_cost(none, 10000), NoFills);
}

TEST_CASE("trading cost shifts one-for-one with fill prices") {
  Rng rng(5, RngStream::Scenario);
  std::vector<FillRecord> fills;
  for (int i = 0; i < 200; ++i) {
    fills.push_back(FillRecord{i, 9800 + rng.uniform_int(0, 400), 1 + i % 10});
  }
  const double base = trading_cost(fills, 10000);
  for (Tick shift : {Tick{1}, Tick{37}, Tick{-250}}) {
    std::vector<FillRecord> shifted = fills;
    for (auto& f : shifted) f.price += shift;
    CHECK(trading_cost(shifted, 10000) ==
          doctest::Approx(base + static_cast<double>(shift)).epsilon(1e-12));
  }
}

TEST_CASE("kurtosis of a normal sample is near zero") {
  Rng rng(12, RngStream::OrderNoise);
  std::vector<double> sample(100000);
  for (auto& v : sample) v = rng.normal(0.0, 1.0);
  CHECK(std::abs(excess_kurtosis(sample)) < 0.1);
}

TEST_CASE("kurtosis of the two-point distribution is -2") {
  std::vector<double> sample;
  for (int i = 0; i < 500; ++i) {
    sample.push_back(1.0);
    sample.push_back(-1.0);
  }
  CHECK(excess_kurtosis(sample) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("kurtosis rejects degenerate input") {
  const std::vector<double> constant(100, 1.5);
  CHECK_THROWS_AS(excess_kurtosis(constant), DegenerateSeries);
  const std::vector<double> tiny{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(excess_kurtosis(tiny), DegenerateSeries);
}

TEST_CASE("kurtosis is invariant under affine maps, squared-return ACF under scaling") {
  Rng rng(8, RngStream::OrderNoise);
  std::vector<double> x(5000);
  double vol = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i % 100 == 0) vol = (i / 100) % 2 == 0 ? 1.0 : 5.0;
    x[i] = rng.normal(0.0, vol);
  }
  const double k = excess_kurtosis(x);
  const auto acf = sq_return_autocorr(x);

  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 3.5 * x[i] + 0.7;
  CHECK(excess_kurtosis(y) == doctest::Approx(k).epsilon(1e-9));

  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = 3.5 * x[i];
  const auto acf_scaled = sq_return_autocorr(z);
  for (int lag = 0; lag < 5; ++lag) {
    CHECK(acf_scaled[lag] == doctest::Approx(acf[lag]).epsilon(1e-9));
  }
}

TEST_CASE("iid noise has no squared-return autocorrelation") {
  Rng rng(3, RngStream::OrderNoise);
  std::vector<double> sample(40000);
  for (auto& v : sample) v = rng.normal(0.0, 1.0);
  const auto acf = sq_return_autocorr(sample);
  const double bound = 3.0 / std::sqrt(static_cast<double>(sample.size()));
  for (double a : acf) CHECK(std::abs(a) < bound);
}

TEST_CASE("alternating volatility regimes produce positive lag-1 autocorrelation") {
  Rng rng(4, RngStream::OrderNoise);
  std::vector<double> sample(20000);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double vol = (i / 100) % 2 == 0 ? 1.0 : 5.0;
    sample[i] = rng.normal(0.0, vol);
  }
  const auto acf = sq_return_autocorr(sample);
  CHECK(acf[0] > 0.0);
}

TEST_CASE("return sampling uses every interval-th price") {
  const std::vector<Tick> prices{100, 110, 121, 133, 146, 161};
  const auto returns = sampled_log_returns(prices, 100, 2);
  REQUIRE(returns.size() == 3);
  CHECK(returns[0] == doctest::Approx(std::log(110.0 / 100.0)));
  CHECK(returns[1] == doctest::Approx(std::log(133.0 / 110.0)));
  CHECK(returns[2] == doctest::Approx(std::log(161.0 / 133.0)));
}

namespace {

RunResult synthetic_run(const std::vector<Tick>& prices, const std::vector<int>& obi) {
  RunResult run;
  run.prices = prices;
  run.depths.resize(prices.size());
  for (std::size_t i = 0; i < prices.size(); ++i) {
    const int o = i < obi.size() ? obi[i] : 0;
    run.depths[i] =
        o >= 0 ? DepthSample{static_cast<std::uint32_t>(5 + o), 5}
               : DepthSample{5, static_cast<std::uint32_t>(5 - o)};
  }
  return run;
}

}  // namespace

TEST_CASE("concordance is zero on a constant price series") {
  const RunResult run = synthetic_run({10000, 10000, 10000, 10000}, {1, -1, 1, -1});
  CHECK(obi_concordance(run.depths, run.prices) == 0);
}

TEST_CASE("concordance counts up-ticks preceded by positive imbalance") {
  // obi > 0 exactly before each rise; price flat otherwise.
  const std::vector<Tick> prices{10000, 10001, 10001, 10002, 10002, 10003, 10003, 10003,
                                 10004, 10004};
  std::vector<int> obi(prices.size(), 0);
  long long upticks = 0;
  for (std::size_t i = 0; i + 1 < prices.size(); ++i) {
    if (prices[i + 1] > prices[i]) {
      obi[i] = 2;
      ++upticks;
    }
  }
  const RunResult run = synthetic_run(prices, obi);
  CHECK(obi_concordance(run.depths, run.prices) == upticks);
  CHECK(upticks == 4);
}

TEST_CASE("concordance negates under price mirroring and under side swapping") {
  Rng rng(6, RngStream::Scenario);
  std::vector<Tick> prices;
  std::vector<int> obi;
  Tick p = 10000;
  for (int i = 0; i < 3000; ++i) {
    p += rng.uniform_int(-2, 2);
    prices.push_back(p);
    obi.push_back(rng.uniform_int(-3, 3));
  }
  const RunResult run = synthetic_run(prices, obi);
  const long long base = obi_concordance(run.depths, run.prices);

  std::vector<Tick> mirrored(prices.size());
  for (std::size_t i = 0; i < prices.size(); ++i) mirrored[i] = 2 * 10000 - prices[i];
  const RunResult mirror_run = synthetic_run(mirrored, obi);
  CHECK(obi_concordance(mirror_run.depths, mirror_run.prices) == -base);

  std::vector<int> swapped(obi.size());
  for (std::size_t i = 0; i < obi.size(); ++i) swapped[i] = -obi[i];
  const RunResult swapped_run = synthetic_run(prices, swapped);
  CHECK(obi_concordance(swapped_run.depths, swapped_run.prices) == -base);

  // Applying both transforms restores the original count.
  const RunResult both = synthetic_run(mirrored, swapped);
  CHECK(obi_concordance(both.depths, both.prices) == base);
}

TEST_CASE("interval averages") {
  RunResult run = synthetic_run({10000, 10000, 10000}, {});
  CHECK(interval_averages(run, 1, 4).avg_price == doctest::Approx(10000.0));

  run = synthetic_run({9000, 10000}, {});
  CHECK(interval_averages(run, 1, 3).avg_price == doctest::Approx(9500.0));
  CHECK(interval_averages(run, 2, 3).avg_price == doctest::Approx(10000.0));

  CHECK_THROWS_AS(interval_averages(run, 2, 2), EmptyInterval);
  CHECK_THROWS_AS(interval_averages(run, 0, 1), EmptyInterval);  // only t=0, unrecorded
  CHECK_THROWS_AS(interval_averages(run, 1, 99), std::invalid_argument);
}
