#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "obisim/agents.hpp"
#include "obisim/config.hpp"
#include "obisim/execution.hpp"
#include "obisim/order_book.hpp"
#include "obisim/scenario.hpp"
#include "obisim/types.hpp"

namespace obisim {

struct DepthSample {
  std::uint32_t buy = 0;
  std::uint32_t sell = 0;

  friend bool operator==(const DepthSample&, const DepthSample&) = default;
};

struct OrderCounts {
  long long na_model = 0;          // model-driven normal-agent orders
  long long na_forced = 0;         // scenario-forced normal-agent orders
  long long na_skipped = 0;        // turns that produced no order
  long long algo_fills = 0;        // algorithm-agent market buys executed
  long long algo_no_liquidity = 0; // market buys against an empty ask side
  long long spoof_placed = 0;      // spoof orders placed over the run
  long long expired = 0;           // orders aged out of the book

  friend bool operator==(const OrderCounts&, const OrderCounts&) = default;
};

// Everything recorded from one run. prices[t-1] and depths[t-1] are the
// end-of-step state at step t; depths are taken at the configured window
// with spoof orders included, which is what agents see.
struct RunResult {
  std::uint64_t seed = 0;
  std::vector<Tick> prices;         // length t_end
  std::vector<DepthSample> depths;  // length t_end
  std::vector<Trade> trades;
  std::vector<FillRecord> fills;
  OrderCounts counts;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

// Optional per-step hook for tests and debug dumps.
class StepObserver {
 public:
  virtual ~StepObserver() = default;
  virtual void on_na_turn(TimeStep /*t*/, int /*agent_index*/,
                          const NormalAgentState& /*post_learn*/, bool /*forced*/,
                          const std::optional<Order>& /*placed*/) {}
  virtual void on_algo_turn(TimeStep /*t*/, int /*algo_index*/, bool /*ordered*/,
                            std::optional<Tick> /*fill_price*/) {}
};

// One deterministic run: per step, expiry, then spoof maintenance, then
// exactly one agent action (normal agents cycling 1..n on non-decision
// steps), then recording. Throws std::invalid_argument when the config
// fails validation.
RunResult run_simulation(const SimConfig& cfg, StepObserver* observer = nullptr);

// Independent runs of `cfg` under each seed, executed with at most
// `workers` threads. Results come back in seed order regardless of
// scheduling.
std::vector<RunResult> run_batch(const SimConfig& cfg, std::span<const std::uint64_t> seeds,
                                 int workers);

// Parallel map over seeds for callers that reduce each run on the fly
// instead of keeping full traces. `fn` must be thread-safe; it receives
// the seed index and the finished RunResult.
void run_batch_apply(const SimConfig& cfg, std::span<const std::uint64_t> seeds, int workers,
                     const std::function<void(std::size_t, RunResult&&)>& fn);

std::vector<std::uint64_t> default_seed_list(int count);

}  // namespace obisim
