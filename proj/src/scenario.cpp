#include "obisim/scenario.hpp"

#include <algorithm>

namespace obisim {

std::optional<ForcedOrder> forced_order_for_draw(const ScenarioConfig& cfg, TimeStep t,
                                                 double u) {
  if (cfg.kind != ScenarioKind::Crash && cfg.kind != ScenarioKind::Surge) return std::nullopt;
  if (t < cfg.window_start || t >= cfg.window_end) return std::nullopt;
  if (u >= cfg.forced_order_probability) return std::nullopt;
  if (cfg.kind == ScenarioKind::Crash) return ForcedOrder{Side::Sell, cfg.forced_sell_price};
  return ForcedOrder{Side::Buy, cfg.forced_buy_price};
}

std::optional<ForcedOrder> maybe_force_order(const ScenarioConfig& cfg, TimeStep t,
                                             Rng& scenario_rng) {
  if (cfg.kind != ScenarioKind::Crash && cfg.kind != ScenarioKind::Surge) return std::nullopt;
  if (t < cfg.window_start || t >= cfg.window_end) return std::nullopt;
  return forced_order_for_draw(cfg, t, scenario_rng.uniform01());
}

void SpoofController::tick(OrderBook& book, TimeStep t, IdAllocator& ids) {
  if (!spoof_on(t)) {
    if (book.total_spoof_count() > 0) book.clear_all_spoof();
    last_anchor_.reset();
    return;
  }
  const std::optional<Tick> anchor = book.best_bid_excluding_spoof();
  if (!anchor) {
    if (book.total_spoof_count() > 0) book.clear_all_spoof();
    last_anchor_.reset();
    return;
  }
  // Unchanged anchor and a full ladder means nothing moved since last step.
  if (last_anchor_ == anchor &&
      book.total_spoof_count() == static_cast<std::size_t>(cfg_.spoof_count)) {
    return;
  }
  rebuild(book, t, ids, *anchor);
  last_anchor_ = anchor;
}

void SpoofController::rebuild(OrderBook& book, TimeStep t, IdAllocator& ids, Tick anchor) {
  const Tick hi = anchor - 1;
  const Tick lo = std::max<Tick>(1, anchor - cfg_.spoof_window);
  if (hi < lo || cfg_.spoof_count <= 0) {
    if (book.total_spoof_count() > 0) book.clear_all_spoof();
    return;
  }
  book.clear_spoof_buys_outside(lo, hi);
  const int levels = static_cast<int>(hi - lo + 1);
  const int base = cfg_.spoof_count / levels;
  const int extra = cfg_.spoof_count % levels;
  for (int d = 0; d < levels; ++d) {
    const Tick price = hi - d;
    const int target = base + (d < extra ? 1 : 0);
    const int have = static_cast<int>(book.spoof_count_at(price));
    if (have > target) {
      book.remove_spoof_buys_at(price, static_cast<std::size_t>(have - target));
    } else {
      for (int n = have; n < target; ++n) {
        Order order;
        order.id = ids.alloc();
        order.side = Side::Buy;
        order.price = price;
        order.owner = kSpoofer;
        order.placed_at = t;
        order.cancel_at = 0;
        order.is_spoof = true;
        book.submit_limit(order);
        ++total_placed_;
      }
    }
  }
}

}  // namespace obisim
