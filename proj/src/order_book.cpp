#include "obisim/order_book.hpp"

#include <cassert>
#include <stdexcept>

namespace obisim {

void OrderBook::register_id(OrderId id) {
  if (id < alive_.size()) {
    throw std::invalid_argument("order id must be strictly increasing");
  }
  alive_.resize(static_cast<std::size_t>(id) + 1, 0);
}

namespace {

// Levels are kept sorted by (placed_at, id). Submissions from the engine
// arrive in time order, so this is an O(1) append there; the general case
// walks back past dead leftovers and later placements.
template <class Entry>
void insert_by_time(std::deque<Entry>& queue, const Entry& entry) {
  auto pos = queue.end();
  while (pos != queue.begin()) {
    const auto& prev = *std::prev(pos);
    if (prev.placed_at < entry.placed_at ||
        (prev.placed_at == entry.placed_at && prev.id < entry.id)) {
      break;
    }
    --pos;
  }
  queue.insert(pos, entry);
}

}  // namespace

void OrderBook::rest(const Order& order) {
  alive_[order.id] = 1;
  const RestingEntry entry{order.id, order.owner, order.placed_at, order.cancel_at};
  Level& level = order.side == Side::Buy ? bids_[order.price] : asks_[order.price];
  if (order.is_spoof) {
    insert_by_time(level.spoof, entry);
    if (order.side == Side::Buy) spoof_bid_levels_.insert(order.price);
    ++spoof_total_;
  } else {
    insert_by_time(level.real, entry);
    ++level.real_alive;
    expiries_.push(ExpiryItem{order.cancel_at, order.id, order.price, order.side});
  }
}

template <class Map>
OrderBook::RestingEntry OrderBook::pop_best(Map& map, Side side, Tick* price_out) {
  auto it = map.begin();
  Level& level = it->second;
  while (!level.real.empty() && !is_alive(level.real.front().id)) {
    level.real.pop_front();
  }
  RestingEntry hit{};
  if (level.real_alive > 0) {
    hit = level.real.front();
    level.real.pop_front();
    --level.real_alive;
  } else {
    hit = level.spoof.front();
    level.spoof.pop_front();
    --spoof_total_;
    if (level.spoof.empty() && side == Side::Buy) {
      spoof_bid_levels_.erase(it->first);
    }
  }
  alive_[hit.id] = 0;
  *price_out = it->first;
  if (level.logically_empty()) map.erase(it);
  return hit;
}

Trade OrderBook::make_trade(const Order& aggressor, Side resting_side, Tick price,
                            const RestingEntry& resting, TimeStep time) {
  Trade trade;
  trade.price = price;
  trade.time = time;
  if (resting_side == Side::Buy) {
    trade.buy_order_id = resting.id;
    trade.buyer = resting.owner;
    trade.sell_order_id = aggressor.id;
    trade.seller = aggressor.owner;
  } else {
    trade.sell_order_id = resting.id;
    trade.seller = resting.owner;
    trade.buy_order_id = aggressor.id;
    trade.buyer = aggressor.owner;
  }
  return trade;
}

MatchOutcome OrderBook::submit_limit(const Order& order) {
  if (order.price < 1) throw std::invalid_argument("order price must be >= 1 tick");
  if (order.quantity != 1) throw std::invalid_argument("order quantity must be 1");
  register_id(order.id);

  const bool crosses =
      order.side == Side::Sell
          ? (!bids_.empty() && bids_.begin()->first >= order.price)
          : (!asks_.empty() && asks_.begin()->first <= order.price);
  if (crosses) {
    Tick price = 0;
    RestingEntry hit{};
    Side resting_side;
    if (order.side == Side::Sell) {
      resting_side = Side::Buy;
      hit = pop_best(bids_, Side::Buy, &price);
    } else {
      resting_side = Side::Sell;
      hit = pop_best(asks_, Side::Sell, &price);
    }
    Trade trade = make_trade(order, resting_side, price, hit, order.placed_at);
    trades_.push_back(trade);
    last_trade_ = price;
    return MatchOutcome{SubmitStatus::Traded, trade};
  }
  rest(order);
  return MatchOutcome{SubmitStatus::Rested, std::nullopt};
}

MatchOutcome OrderBook::submit_market(Side side, OwnerId owner, OrderId id, TimeStep now) {
  register_id(id);
  Order aggressor;
  aggressor.id = id;
  aggressor.side = side;
  aggressor.quantity = 1;
  aggressor.owner = owner;
  aggressor.placed_at = now;

  Tick price = 0;
  RestingEntry hit{};
  Side resting_side;
  if (side == Side::Buy) {
    if (asks_.empty()) return MatchOutcome{SubmitStatus::NoLiquidity, std::nullopt};
    resting_side = Side::Sell;
    hit = pop_best(asks_, Side::Sell, &price);
  } else {
    if (bids_.empty()) return MatchOutcome{SubmitStatus::NoLiquidity, std::nullopt};
    resting_side = Side::Buy;
    hit = pop_best(bids_, Side::Buy, &price);
  }
  Trade trade = make_trade(aggressor, resting_side, price, hit, now);
  trades_.push_back(trade);
  last_trade_ = price;
  return MatchOutcome{SubmitStatus::Traded, trade};
}

std::size_t OrderBook::expire_until(TimeStep now) {
  std::size_t removed = 0;
  while (!expiries_.empty() && expiries_.top().cancel_at <= now) {
    const ExpiryItem item = expiries_.top();
    expiries_.pop();
    if (!is_alive(item.id)) continue;  // already executed
    alive_[item.id] = 0;
    if (item.side == Side::Buy) {
      auto it = bids_.find(item.price);
      assert(it != bids_.end());
      --it->second.real_alive;
      if (it->second.logically_empty()) bids_.erase(it);
    } else {
      auto it = asks_.find(item.price);
      assert(it != asks_.end());
      --it->second.real_alive;
      if (it->second.logically_empty()) asks_.erase(it);
    }
    ++removed;
  }
  return removed;
}

int OrderBook::depth(Side side, Tick window, bool include_spoof) const {
  if (window < 1) throw std::invalid_argument("depth window must be >= 1");
  int total = 0;
  if (side == Side::Buy) {
    if (bids_.empty()) return 0;
    const Tick floor = bids_.begin()->first - window;
    for (const auto& [price, level] : bids_) {
      if (price < floor) break;
      total += static_cast<int>(level.live_count(include_spoof));
    }
  } else {
    if (asks_.empty()) return 0;
    const Tick ceil = asks_.begin()->first + window;
    for (const auto& [price, level] : asks_) {
      if (price > ceil) break;
      total += static_cast<int>(level.live_count(include_spoof));
    }
  }
  return total;
}

int OrderBook::obi(Tick window, bool include_spoof) const {
  return depth(Side::Buy, window, include_spoof) - depth(Side::Sell, window, include_spoof);
}

std::optional<Tick> OrderBook::best_bid() const {
  if (bids_.empty()) return std::nullopt;
  return bids_.begin()->first;
}

std::optional<Tick> OrderBook::best_ask() const {
  if (asks_.empty()) return std::nullopt;
  return asks_.begin()->first;
}

std::optional<Tick> OrderBook::best_bid_excluding_spoof() const {
  for (const auto& [price, level] : bids_) {
    if (level.real_alive > 0) return price;
  }
  return std::nullopt;
}

std::size_t OrderBook::spoof_count_at(Tick price) const {
  auto it = bids_.find(price);
  return it == bids_.end() ? 0 : it->second.spoof.size();
}

std::size_t OrderBook::remove_spoof_buys_at(Tick price, std::size_t count) {
  auto it = bids_.find(price);
  if (it == bids_.end()) return 0;
  Level& level = it->second;
  std::size_t removed = 0;
  while (removed < count && !level.spoof.empty()) {
    alive_[level.spoof.back().id] = 0;
    level.spoof.pop_back();
    --spoof_total_;
    ++removed;
  }
  if (level.spoof.empty()) spoof_bid_levels_.erase(price);
  if (level.logically_empty()) bids_.erase(it);
  return removed;
}

std::size_t OrderBook::clear_spoof_buys_outside(Tick lo, Tick hi) {
  std::size_t removed = 0;
  std::vector<Tick> doomed;
  for (Tick price : spoof_bid_levels_) {
    if (price < lo || price > hi) doomed.push_back(price);
  }
  for (Tick price : doomed) {
    removed += remove_spoof_buys_at(price, static_cast<std::size_t>(-1));
  }
  return removed;
}

std::size_t OrderBook::clear_all_spoof() {
  std::size_t removed = clear_spoof_buys_outside(1, 0);
  // Spoof sells only occur in synthetic test books; sweep the ask side too.
  if (spoof_total_ > 0) {
    for (auto it = asks_.begin(); it != asks_.end();) {
      Level& level = it->second;
      while (!level.spoof.empty()) {
        alive_[level.spoof.back().id] = 0;
        level.spoof.pop_back();
        --spoof_total_;
        ++removed;
      }
      if (level.logically_empty()) {
        it = asks_.erase(it);
      } else {
        ++it;
      }
    }
  }
  return removed;
}

std::size_t OrderBook::resting_count() const {
  std::size_t n = 0;
  for (const auto& [price, level] : bids_) n += level.live_count(true);
  for (const auto& [price, level] : asks_) n += level.live_count(true);
  return n;
}

std::vector<Order> OrderBook::resting_orders() const {
  std::vector<Order> out;
  out.reserve(resting_count());
  auto emit_side = [&](const auto& map, Side side) {
    for (const auto& [price, level] : map) {
      for (const RestingEntry& e : level.real) {
        if (!is_alive(e.id)) continue;
        out.push_back(Order{e.id, side, price, 1, e.owner, e.placed_at, e.cancel_at, false});
      }
      for (const RestingEntry& e : level.spoof) {
        out.push_back(Order{e.id, side, price, 1, e.owner, e.placed_at, e.cancel_at, true});
      }
    }
  };
  emit_side(bids_, Side::Buy);
  emit_side(asks_, Side::Sell);
  return out;
}

bool OrderBook::crossed() const {
  return !bids_.empty() && !asks_.empty() && bids_.begin()->first >= asks_.begin()->first;
}

}  // namespace obisim
