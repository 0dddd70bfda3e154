#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "obisim/order_book.hpp"
#include "obisim/types.hpp"

namespace obisim::testing {

// Brute-force continuous double auction that rescans every resting order
// on each operation. Shares no code with OrderBook; used as the matching
// oracle.
struct ReferenceMatcher {
  std::vector<Order> resting;
  std::vector<Trade> tape;
  std::optional<Tick> last_trade;

  // Priority: better price first, then non-spoof before spoof at the same
  // price, then placement time, then id.
  std::size_t best_index(Side resting_side, std::optional<Tick> limit) const {
    std::size_t best = resting.size();
    for (std::size_t i = 0; i < resting.size(); ++i) {
      const Order& o = resting[i];
      if (o.side != resting_side) continue;
      if (limit) {
        if (resting_side == Side::Buy && o.price < *limit) continue;
        if (resting_side == Side::Sell && o.price > *limit) continue;
      }
      if (best == resting.size()) {
        best = i;
        continue;
      }
      const Order& b = resting[best];
      const bool better_price =
          resting_side == Side::Buy ? o.price > b.price : o.price < b.price;
      const bool worse_price =
          resting_side == Side::Buy ? o.price < b.price : o.price > b.price;
      if (better_price) {
        best = i;
      } else if (!worse_price) {
        if (o.is_spoof != b.is_spoof) {
          if (!o.is_spoof) best = i;
        } else if (o.placed_at != b.placed_at) {
          if (o.placed_at < b.placed_at) best = i;
        } else if (o.id < b.id) {
          best = i;
        }
      }
    }
    return best;
  }

  MatchOutcome submit_limit(const Order& order) {
    const Side against = order.side == Side::Buy ? Side::Sell : Side::Buy;
    const std::size_t hit = best_index(against, order.price);
    if (hit == resting.size()) {
      resting.push_back(order);
      return MatchOutcome{SubmitStatus::Rested, std::nullopt};
    }
    return execute(order, hit);
  }

  MatchOutcome submit_market(Side side, OwnerId owner, OrderId id, TimeStep now) {
    const Side against = side == Side::Buy ? Side::Sell : Side::Buy;
    const std::size_t hit = best_index(against, std::nullopt);
    if (hit == resting.size()) {
      return MatchOutcome{SubmitStatus::NoLiquidity, std::nullopt};
    }
    Order aggressor;
    aggressor.id = id;
    aggressor.side = side;
    aggressor.owner = owner;
    aggressor.placed_at = now;
    return execute(aggressor, hit);
  }

  std::size_t expire_until(TimeStep now) {
    const std::size_t before = resting.size();
    std::erase_if(resting,
                  [now](const Order& o) { return !o.is_spoof && o.cancel_at <= now; });
    return before - resting.size();
  }

  int depth(Side side, Tick window, bool include_spoof) const {
    std::optional<Tick> best;
    for (const Order& o : resting) {
      if (o.side != side) continue;
      if (!best || (side == Side::Buy ? o.price > *best : o.price < *best)) best = o.price;
    }
    if (!best) return 0;
    int count = 0;
    for (const Order& o : resting) {
      if (o.side != side) continue;
      if (o.is_spoof && !include_spoof) continue;
      const bool inside = side == Side::Buy ? (o.price >= *best - window)
                                            : (o.price <= *best + window);
      if (inside) ++count;
    }
    return count;
  }

  int obi(Tick window, bool include_spoof = true) const {
    return depth(Side::Buy, window, include_spoof) -
           depth(Side::Sell, window, include_spoof);
  }

 private:
  MatchOutcome execute(const Order& aggressor, std::size_t hit) {
    const Order resting_order = resting[hit];
    resting.erase(resting.begin() + static_cast<std::ptrdiff_t>(hit));
    Trade trade;
    trade.price = resting_order.price;
    trade.time = aggressor.placed_at;
    if (resting_order.side == Side::Buy) {
      trade.buy_order_id = resting_order.id;
      trade.buyer = resting_order.owner;
      trade.sell_order_id = aggressor.id;
      trade.seller = aggressor.owner;
    } else {
      trade.sell_order_id = resting_order.id;
      trade.seller = resting_order.owner;
      trade.buy_order_id = aggressor.id;
      trade.buyer = aggressor.owner;
    }
    tape.push_back(trade);
    last_trade = trade.price;
    return MatchOutcome{SubmitStatus::Traded, trade};
  }
};

}  // namespace obisim::testing
