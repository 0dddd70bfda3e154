#include "obisim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace obisim {

RunResult run_simulation(const SimConfig& cfg, StepObserver* observer) {
  if (auto errors = validate(cfg); !errors.empty()) {
    std::string joined = "invalid config:";
    for (const auto& e : errors) joined += " " + e + ";";
    throw std::invalid_argument(joined);
  }

  Rng init_rng(cfg.seed, RngStream::AgentInit);
  Rng turn_rng(cfg.seed, RngStream::AgentTurn);
  Rng order_rng(cfg.seed, RngStream::OrderNoise);
  Rng scenario_rng(cfg.seed, RngStream::Scenario);

  const AgentParams params = cfg.agent_params();
  std::vector<NormalAgentState> agents;
  agents.reserve(static_cast<std::size_t>(cfg.n_normal_agents));
  for (int j = 0; j < cfg.n_normal_agents; ++j) agents.push_back(init_agent(params, init_rng));

  OrderBook book;
  IdAllocator ids;
  SpoofController spoof(cfg.scenario);
  const TurnSchedule schedule = make_schedule(cfg.algo);
  const bool spoof_scenario = cfg.scenario.kind == ScenarioKind::Spoof;
  const Tick pf = cfg.fundamental_price;
  const Tick window = cfg.algo.depth_window;
  const std::size_t steps = static_cast<std::size_t>(cfg.t_end);

  RunResult out;
  out.seed = cfg.seed;
  out.prices.resize(steps);
  out.depths.resize(steps);

  int na_cursor = 0;
  for (TimeStep t = 1; t <= cfg.t_end; ++t) {
    out.counts.expired += static_cast<long long>(book.expire_until(t));
    if (spoof_scenario && t >= cfg.scenario.window_start) spoof.tick(book, t, ids);

    const MarketView view(pf, {out.prices.data(), static_cast<std::size_t>(t - 1)});

    if (const std::optional<int> k = schedule.algo_turn(t)) {
      bool ordered = false;
      std::optional<Tick> fill_price;
      if (decide(cfg.algo.kind, book, window) == AlgoDecision::PlaceMarketBuy) {
        const MatchOutcome outcome =
            book.submit_market(Side::Buy, algo_agent_owner(*k), ids.alloc(), t);
        if (outcome.status == SubmitStatus::Traded) {
          out.fills.push_back(FillRecord{t, outcome.trade->price, *k});
          ++out.counts.algo_fills;
          ordered = true;
          fill_price = outcome.trade->price;
        } else {
          ++out.counts.algo_no_liquidity;
        }
      }
      if (observer) observer->on_algo_turn(t, *k, ordered, fill_price);
    } else {
      const int j = na_cursor + 1;
      NormalAgentState& state = agents[static_cast<std::size_t>(na_cursor)];
      na_cursor = (na_cursor + 1) % cfg.n_normal_agents;

      const std::optional<ForcedOrder> forced = maybe_force_order(cfg.scenario, t, scenario_rng);
      const StrategyReturns r = strategy_returns(state, view, t);
      learn(state, r.r1, r.r2, view, t, params, turn_rng);

      std::optional<Order> placed;
      if (forced) {
        Order order{ids.alloc(), forced->side,     forced->price, 1,
                    normal_agent_owner(j), t, t + cfg.t_cancel, false};
        book.submit_limit(order);
        ++out.counts.na_forced;
        placed = order;
      } else {
        const double eps = draw_noise(state, params, turn_rng);
        const double re = expected_return_given(state, r.r1, r.r2, eps);
        if (const auto intent = order_from_expectation(re, params, view, t, order_rng)) {
          Order order{ids.alloc(), intent->side,    intent->price, 1,
                      normal_agent_owner(j), t, t + cfg.t_cancel, false};
          book.submit_limit(order);
          ++out.counts.na_model;
          placed = order;
        } else {
          ++out.counts.na_skipped;
        }
      }
      if (observer) observer->on_na_turn(t, j, state, forced.has_value(), placed);
    }

    const std::size_t idx = static_cast<std::size_t>(t - 1);
    out.prices[idx] = book.last_trade_price().value_or(pf);
    out.depths[idx] = DepthSample{static_cast<std::uint32_t>(book.depth(Side::Buy, window, true)),
                                  static_cast<std::uint32_t>(book.depth(Side::Sell, window, true))};
  }

  out.trades = book.take_trades();
  out.counts.spoof_placed = spoof.total_placed();
  return out;
}

void run_batch_apply(const SimConfig& cfg, std::span<const std::uint64_t> seeds, int workers,
                     const std::function<void(std::size_t, RunResult&&)>& fn) {
  if (workers < 1) workers = 1;
  const std::size_t n = seeds.size();
  if (n == 0) return;
  {
    std::vector<std::uint64_t> sorted(seeds.begin(), seeds.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("batch seeds must be distinct");
    }
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        SimConfig run_cfg = cfg;
        run_cfg.seed = seeds[i];
        fn(i, run_simulation(run_cfg));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const int thread_count = static_cast<int>(std::min<std::size_t>(n, workers));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(thread_count));
    for (int i = 0; i < thread_count; ++i) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<RunResult> run_batch(const SimConfig& cfg, std::span<const std::uint64_t> seeds,
                                 int workers) {
  std::vector<RunResult> results(seeds.size());
  std::mutex sink;
  run_batch_apply(cfg, seeds, workers, [&](std::size_t i, RunResult&& r) {
    std::lock_guard lock(sink);
    results[i] = std::move(r);
  });
  return results;
}

std::vector<std::uint64_t> default_seed_list(int count) {
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(count));
  std::iota(seeds.begin(), seeds.end(), 1);
  return seeds;
}

}  // namespace obisim
