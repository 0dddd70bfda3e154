#pragma once

#include <cstdint>

namespace obisim {

// Named substreams derived from one master seed. Initialization, per-turn
// learning draws, order-price noise and scenario injection each get their
// own stream, so toggling a scenario or an algorithm does not shift the
// draw sequence of anything else.
enum class RngStream : std::uint64_t {
  AgentInit = 1,
  AgentTurn = 2,
  OrderNoise = 3,
  Scenario = 4,
};

// xoshiro256** seeded through splitmix64. Self-contained so that draw
// sequences are identical across standard libraries and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, RngStream stream = RngStream::AgentInit);

  std::uint64_t next_u64();

  double uniform01();                    // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  int uniform_int(int lo, int hi);       // {lo, ..., hi}

  // Polar Box-Muller; the second variate of each pair is cached.
  double normal(double mean, double sd);

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::uint64_t s_[4];
  double cached_gauss_ = 0.0;
  bool has_cached_gauss_ = false;
};

}  // namespace obisim
