#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "obisim/errors.hpp"
#include "obisim/execution.hpp"
#include "obisim/rng.hpp"

using namespace obisim;

namespace {

// Builds a book with the given numbers of bids/asks inside the 50-tick
// window.
OrderBook book_with_depths(int bids, int asks, int spoof_bids = 0) {
  OrderBook book;
  OrderId id = 1;
  TimeStep t = 0;
  for (int i = 0; i < bids; ++i) {
    book.submit_limit(Order{id++, Side::Buy, 9990 - i % 40, 1, 1, ++t, 9999999, false});
  }
  for (int i = 0; i < asks; ++i) {
    book.submit_limit(Order{id++, Side::Sell, 10010 + i % 40, 1, 1, ++t, 9999999, false});
  }
  for (int i = 0; i < spoof_bids; ++i) {
    book.submit_limit(Order{id++, Side::Buy, 9989 - i % 40, 1, kSpoofer, ++t, 0, true});
  }
  return book;
}

}  // namespace

TEST_CASE("AA always places a market buy") {
  const OrderBook empty;
  CHECK(decide(AlgoKind::AA, empty, 50) == AlgoDecision::PlaceMarketBuy);
  const OrderBook book = book_with_depths(1, 9);
  CHECK(decide(AlgoKind::AA, book, 50) == AlgoDecision::PlaceMarketBuy);
}

TEST_CASE("OAA requires strictly greater buy depth") {
  CHECK(decide(AlgoKind::OAA, book_with_depths(5, 5), 50) == AlgoDecision::NoOrder);
  CHECK(decide(AlgoKind::OAA, book_with_depths(6, 5), 50) == AlgoDecision::PlaceMarketBuy);
  CHECK(decide(AlgoKind::OAA, book_with_depths(5, 6), 50) == AlgoDecision::NoOrder);
}

TEST_CASE("spoof orders sway the OAA decision") {
  CHECK(decide(AlgoKind::OAA, book_with_depths(5, 10), 50) == AlgoDecision::NoOrder);
  CHECK(decide(AlgoKind::OAA, book_with_depths(5, 10, 6), 50) ==
        AlgoDecision::PlaceMarketBuy);
}

TEST_CASE("OAA buys exactly when the imbalance is positive") {
  Rng rng(17, RngStream::Scenario);
  for (int i = 0; i < 300; ++i) {
    const OrderBook book = book_with_depths(rng.uniform_int(0, 12), rng.uniform_int(0, 12),
                                            rng.uniform_int(0, 3));
    const bool buys = decide(AlgoKind::OAA, book, 50) == AlgoDecision::PlaceMarketBuy;
    CHECK(buys == (book.obi(50) > 0));
  }
}

TEST_CASE("schedule maps steps to decision turns cycling k = 1..10") {
  const TurnSchedule sched{true, 100000, 100, 10};
  CHECK_FALSE(sched.algo_turn(99999).has_value());
  CHECK(sched.algo_turn(100000) == 1);
  CHECK(sched.algo_turn(100100) == 2);
  CHECK(sched.algo_turn(100900) == 10);
  CHECK(sched.algo_turn(101000) == 1);
  CHECK_FALSE(sched.algo_turn(100050).has_value());

  const TurnSchedule off{false, 100000, 100, 10};
  CHECK_FALSE(off.algo_turn(100000).has_value());
}

TEST_CASE("equalization reproduces the reference arithmetic") {
  std::vector<long long> counts(25, 284);
  const Equalization low = equalize_order_counts(counts, 100000, 400000);
  CHECK(low.aa_interval == 1056);
  CHECK(low.implied_aa_count == 284);

  counts.assign(25, 867);
  const Equalization high = equalize_order_counts(counts, 100000, 400000);
  CHECK(high.aa_interval == 346);
  CHECK(high.implied_aa_count == 867);

  counts.assign(3, 300000);
  const Equalization extreme = equalize_order_counts(counts, 100000, 400000);
  CHECK(extreme.aa_interval == 1);
  CHECK(extreme.implied_aa_count == 300000);
}

TEST_CASE("equalization uses the rounded mean of the run counts") {
  const std::vector<long long> counts{280, 288, 284, 285};  // mean 284.25 -> 284
  const Equalization eq = equalize_order_counts(counts, 100000, 400000);
  CHECK(eq.aa_interval == 1056);
}

TEST_CASE("equalization rejects impossible targets and bad inputs") {
  const std::vector<long long> too_many{300001};
  CHECK_THROWS_AS(equalize_order_counts(too_many, 100000, 400000), InfeasibleTarget);
  const std::vector<long long> empty;
  CHECK_THROWS_AS(equalize_order_counts(empty, 100000, 400000), std::invalid_argument);
  const std::vector<long long> zero{0};
  CHECK_THROWS_AS(equalize_order_counts(zero, 100000, 400000), std::invalid_argument);
}

TEST_CASE("more frequent decision turns never lose orders on a fixed trace") {
  // Fixed imbalance-sign trace: the decision turns of a larger interval
  // are a subset of a smaller one's when the intervals divide each other,
  // so the order count is monotone in decision frequency.
  Rng rng(23, RngStream::Scenario);
  std::vector<int> obi_sign(40000);
  for (auto& s : obi_sign) s = rng.uniform_int(-1, 1);

  auto count_orders = [&](TimeStep interval) {
    const TurnSchedule sched{true, 1000, interval, 10};
    long long orders = 0;
    for (TimeStep t = 1; t < static_cast<TimeStep>(obi_sign.size()); ++t) {
      if (sched.algo_turn(t) && obi_sign[static_cast<std::size_t>(t)] > 0) ++orders;
    }
    return orders;
  };

  long long prev = count_orders(512);
  for (TimeStep interval : {256, 128, 64, 32, 16, 8, 4, 2, 1}) {
    const long long current = count_orders(interval);
    CHECK(current >= prev);
    prev = current;
  }
}
