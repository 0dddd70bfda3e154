#pragma once

#include <cstdint>
#include <optional>

#include "obisim/order_book.hpp"
#include "obisim/rng.hpp"
#include "obisim/types.hpp"

namespace obisim {

enum class ScenarioKind : std::uint8_t { Stable, Crash, Surge, Spoof };

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Stable;
  TimeStep window_start = 100000;
  TimeStep window_end = 130000;  // crash/surge injection window, half-open
  double forced_order_probability = 0.20;
  Tick forced_sell_price = 1;
  Tick forced_buy_price = 100000;
  TimeStep spoof_cycle = 10000;  // on/off alternation period
  int spoof_count = 1000;        // maintained spoof orders while on
  Tick spoof_window = 50;        // ticks below the best bid

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct ForcedOrder {
  Side side;
  Tick price;
};

// Deterministic core of the crash/surge injection: the decision given the
// uniform draw u.
std::optional<ForcedOrder> forced_order_for_draw(const ScenarioConfig& cfg, TimeStep t,
                                                 double u);

// Crash (surge) scenarios replace the normal agent's model order with a
// sell at 1 (buy at 100,000) with probability 20% while t is inside
// [window_start, window_end). Consumes one Scenario-stream draw per
// normal-agent turn inside the window, none outside.
std::optional<ForcedOrder> maybe_force_order(const ScenarioConfig& cfg, TimeStep t,
                                             Rng& scenario_rng);

// Sequential order-id source shared by every submitter in a run.
struct IdAllocator {
  OrderId next = 1;
  OrderId alloc() { return next++; }
};

// Maintains the spoof-buy ladder: while a spoof-on window is active and a
// non-spoof best bid exists, the book holds exactly spoof_count spoof buy
// orders spread round-robin over [best_bid - spoof_window, best_bid - 1],
// re-pegged to the best bid as it moves and replenished after fills. All
// spoof orders are removed during off windows. Spoof orders never expire
// and always yield time priority at their level, which is exactly the
// steady state of cancelling and re-placing the whole ladder each step.
class SpoofController {
 public:
  explicit SpoofController(const ScenarioConfig& cfg) : cfg_(cfg) {}

  // Spoof-on windows are [start + 2m*cycle, start + (2m+1)*cycle).
  bool spoof_on(TimeStep t) const {
    if (cfg_.kind != ScenarioKind::Spoof || t < cfg_.window_start) return false;
    return ((t - cfg_.window_start) / cfg_.spoof_cycle) % 2 == 0;
  }

  // Call once per step; cheap no-op when the ladder already matches.
  void tick(OrderBook& book, TimeStep t, IdAllocator& ids);

  long long total_placed() const { return total_placed_; }

 private:
  void rebuild(OrderBook& book, TimeStep t, IdAllocator& ids, Tick anchor);

  ScenarioConfig cfg_;
  std::optional<Tick> last_anchor_;
  long long total_placed_ = 0;
};

}  // namespace obisim
