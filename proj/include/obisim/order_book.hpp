#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "obisim/types.hpp"

namespace obisim {

enum class SubmitStatus : std::uint8_t { Rested, Traded, NoLiquidity };

struct MatchOutcome {
  SubmitStatus status = SubmitStatus::Rested;
  std::optional<Trade> trade;
};

// Continuous double auction limit order book.
//
// Price priority, then time priority: an incoming sell (buy) priced at or
// below (above) the best bid (ask) trades immediately at the resting
// order's price against the best-priced, oldest opposite order. Orders are
// one share each, so a submission produces at most one trade.
//
// Within one price level, non-spoof orders queue in placement order
// (placed_at, ties by id) and spoof orders queue behind every non-spoof
// order. The scenario layer re-pegs spoof orders to the best bid every
// step, which keeps them permanently newest at their level; the book
// encodes that directly instead of churning 1,000 cancel/replace pairs per
// step.
//
// Order ids must be strictly increasing across submissions (the engine
// allocates them sequentially); together with non-decreasing placed_at this
// makes queue position equal to time priority.
class OrderBook {
 public:
  // Rests or matches a limit order. Throws std::invalid_argument on
  // price < 1 tick, quantity != 1, or a non-increasing order id.
  MatchOutcome submit_limit(const Order& order);

  // One-share market order: executes against the best opposite order at
  // that order's price. NoLiquidity (book untouched) when the opposite
  // side is empty.
  MatchOutcome submit_market(Side side, OwnerId owner, OrderId id, TimeStep now);

  // Removes every non-spoof order whose cancel_at <= now. `now` must be
  // non-decreasing across calls. Returns the number removed.
  std::size_t expire_until(TimeStep now);

  // Number of resting buy orders priced in [best_bid - window, best_bid]
  // (for Sell: [best_ask, best_ask + window]), both ends inclusive.
  // 0 when that side is empty. Spoof orders are counted only when
  // include_spoof is set; the window anchor is the book's best quote
  // either way.
  int depth(Side side, Tick window, bool include_spoof) const;

  // depth(Buy, window) - depth(Sell, window).
  int obi(Tick window, bool include_spoof = true) const;

  std::optional<Tick> best_bid() const;
  std::optional<Tick> best_ask() const;
  // Best bid among non-spoof orders; the spoof ladder anchors here.
  std::optional<Tick> best_bid_excluding_spoof() const;

  std::optional<Tick> last_trade_price() const { return last_trade_; }

  const std::vector<Trade>& trades() const { return trades_; }
  std::vector<Trade> take_trades() { return std::move(trades_); }

  // Spoof-ladder maintenance hooks (scenario layer).
  std::size_t spoof_count_at(Tick price) const;
  std::size_t total_spoof_count() const { return spoof_total_; }
  std::size_t remove_spoof_buys_at(Tick price, std::size_t count);
  std::size_t clear_spoof_buys_outside(Tick lo, Tick hi);
  std::size_t clear_all_spoof();

  std::size_t resting_count() const;
  // Snapshot of all live resting orders, bids (best first) then asks.
  std::vector<Order> resting_orders() const;
  // Diagnostic: true when best bid >= best ask.
  bool crossed() const;

 private:
  struct RestingEntry {
    OrderId id;
    OwnerId owner;
    TimeStep placed_at;
    TimeStep cancel_at;
  };

  // real_alive counts live entries in `real`; executed/expired entries may
  // linger in the deque until they reach the front (lazy removal keeps
  // aging O(1) without random-access erases).
  struct Level {
    std::deque<RestingEntry> real;
    std::deque<RestingEntry> spoof;
    std::uint32_t real_alive = 0;

    bool logically_empty() const { return real_alive == 0 && spoof.empty(); }
    std::size_t live_count(bool include_spoof) const {
      return real_alive + (include_spoof ? spoof.size() : 0);
    }
  };

  struct ExpiryItem {
    TimeStep cancel_at;
    OrderId id;
    Tick price;
    Side side;
  };
  struct ExpiresLater {
    bool operator()(const ExpiryItem& a, const ExpiryItem& b) const {
      if (a.cancel_at != b.cancel_at) return a.cancel_at > b.cancel_at;
      return a.id > b.id;
    }
  };

  using BidMap = std::map<Tick, Level, std::greater<Tick>>;
  using AskMap = std::map<Tick, Level, std::less<Tick>>;

  void register_id(OrderId id);
  void rest(const Order& order);
  bool is_alive(OrderId id) const { return id < alive_.size() && alive_[id]; }

  template <class Map>
  RestingEntry pop_best(Map& map, Side side, Tick* price_out);
  Trade make_trade(const Order& aggressor, Side resting_side, Tick price,
                   const RestingEntry& resting, TimeStep time);

  BidMap bids_;
  AskMap asks_;
  std::vector<std::uint8_t> alive_;
  std::priority_queue<ExpiryItem, std::vector<ExpiryItem>, ExpiresLater> expiries_;
  std::vector<Trade> trades_;
  std::optional<Tick> last_trade_;
  std::set<Tick> spoof_bid_levels_;
  std::size_t spoof_total_ = 0;
};

}  // namespace obisim
