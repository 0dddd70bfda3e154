#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace obisim {

using Tick = std::int64_t;      // prices in integer ticks, >= 1
using TimeStep = std::int64_t;  // discrete simulation time
using OrderId = std::uint32_t;

enum class Side : std::uint8_t { Buy, Sell };

inline Side opposite(Side s) { return s == Side::Buy ? Side::Sell : Side::Buy; }

// Order owner: positive values are normal-agent indices (1-based), negative
// values are algorithm-agent indices (owner -k is algorithm agent k), and 0
// is the spoofer.
using OwnerId = std::int32_t;

inline constexpr OwnerId kSpoofer = 0;

inline OwnerId normal_agent_owner(int j) { return static_cast<OwnerId>(j); }
inline OwnerId algo_agent_owner(int k) { return static_cast<OwnerId>(-k); }

inline std::string owner_label(OwnerId owner) {
  if (owner > 0) return "na:" + std::to_string(owner);
  if (owner < 0) return "algo:" + std::to_string(-owner);
  return "spoof";
}

inline std::optional<OwnerId> parse_owner_label(const std::string& label) {
  if (label == "spoof") return kSpoofer;
  auto tail = [&](std::size_t n) { return std::stoi(label.substr(n)); };
  try {
    if (label.rfind("na:", 0) == 0) return static_cast<OwnerId>(tail(3));
    if (label.rfind("algo:", 0) == 0) return static_cast<OwnerId>(-tail(5));
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

// One-share order. `cancel_at` is placed_at + t_c; spoof orders never age
// out (the scenario layer manages their lifetime).
struct Order {
  OrderId id = 0;
  Side side = Side::Buy;
  Tick price = 0;
  std::int32_t quantity = 1;
  OwnerId owner = 0;
  TimeStep placed_at = 0;
  TimeStep cancel_at = 0;
  bool is_spoof = false;

  friend bool operator==(const Order&, const Order&) = default;
};

// Executed at the resting order's limit price, never the aggressor's.
struct Trade {
  Tick price = 0;
  OrderId buy_order_id = 0;
  OrderId sell_order_id = 0;
  OwnerId buyer = 0;
  OwnerId seller = 0;
  TimeStep time = 0;

  friend bool operator==(const Trade&, const Trade&) = default;
};

}  // namespace obisim
