#include "obisim/execution.hpp"

#include <cmath>
#include <stdexcept>

#include "obisim/errors.hpp"

namespace obisim {

AlgoDecision decide(AlgoKind kind, const OrderBook& book, Tick window) {
  switch (kind) {
    case AlgoKind::AA:
      return AlgoDecision::PlaceMarketBuy;
    case AlgoKind::OAA:
      return book.depth(Side::Buy, window, true) > book.depth(Side::Sell, window, true)
                 ? AlgoDecision::PlaceMarketBuy
                 : AlgoDecision::NoOrder;
    case AlgoKind::None:
      break;
  }
  return AlgoDecision::NoOrder;
}

Equalization equalize_order_counts(std::span<const long long> oaa_run_counts,
                                   TimeStep start_time, TimeStep t_end) {
  if (oaa_run_counts.empty()) {
    throw std::invalid_argument("equalize_order_counts: empty count list");
  }
  double sum = 0.0;
  for (long long c : oaa_run_counts) {
    if (c < 1) throw std::invalid_argument("equalize_order_counts: count < 1");
    sum += static_cast<double>(c);
  }
  const long long target = std::llround(sum / static_cast<double>(oaa_run_counts.size()));
  const TimeStep horizon = t_end - start_time;
  if (target > horizon) {
    throw InfeasibleTarget("order-count target exceeds one order per step");
  }
  TimeStep interval =
      static_cast<TimeStep>(std::llround(static_cast<double>(horizon) / target));
  if (interval < 1) interval = 1;
  return Equalization{interval, horizon / interval};
}

}  // namespace obisim
