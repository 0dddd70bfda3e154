#pragma once

#include <optional>
#include <span>

#include "obisim/order_book.hpp"
#include "obisim/types.hpp"

namespace obisim {

// AA: conventional execution algorithm, market buy on every decision turn.
// OAA: order-book-imbalance strategy, market buy only when buy depth
// strictly exceeds sell depth inside the measurement window.
enum class AlgoKind : std::uint8_t { None, AA, OAA };

struct ExecAlgoConfig {
  AlgoKind kind = AlgoKind::None;
  int count = 10;                      // number of algorithm agents
  TimeStep decision_interval = 550;    // l: steps between decision turns
  TimeStep start_time = 100000;        // first decision turn
  Tick depth_window = 50;              // ticks each side of the best quote

  friend bool operator==(const ExecAlgoConfig&, const ExecAlgoConfig&) = default;
};

// One algorithm-agent purchase.
struct FillRecord {
  TimeStep time = 0;
  Tick price = 0;
  int algo_index = 0;  // k in [1, count]

  friend bool operator==(const FillRecord&, const FillRecord&) = default;
};

enum class AlgoDecision : std::uint8_t { PlaceMarketBuy, NoOrder };

// Spoof orders are ordinary book entries here; they count toward both
// depths.
AlgoDecision decide(AlgoKind kind, const OrderBook& book, Tick window);

// Maps time steps to turns. Decision turns sit at start + m*interval for
// m >= 0, the agent index k cycling 1..count; every other step is a
// normal-agent turn. A decision turn consumes its step whether or not an
// order is placed.
struct TurnSchedule {
  bool enabled = false;
  TimeStep start = 0;
  TimeStep interval = 1;
  int count = 1;

  std::optional<int> algo_turn(TimeStep t) const {
    if (!enabled || t < start) return std::nullopt;
    const TimeStep since = t - start;
    if (since % interval != 0) return std::nullopt;
    return static_cast<int>((since / interval) % count) + 1;
  }
};

inline TurnSchedule make_schedule(const ExecAlgoConfig& cfg) {
  return TurnSchedule{cfg.kind != AlgoKind::None && cfg.count >= 1, cfg.start_time,
                      cfg.decision_interval, cfg.count};
}

struct Equalization {
  TimeStep aa_interval = 1;
  long long implied_aa_count = 0;  // floor(horizon / aa_interval)
};

// Sets the AA decision interval so AAs, which order on every decision
// turn, place about as many orders as the OAAs averaged over their runs:
// l_AA = round(horizon / round(mean(counts))), at least 1.
// Throws InfeasibleTarget when the target exceeds one order per step and
// std::invalid_argument on an empty list or a count < 1.
Equalization equalize_order_counts(std::span<const long long> oaa_run_counts,
                                   TimeStep start_time, TimeStep t_end);

}  // namespace obisim
