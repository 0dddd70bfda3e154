#include "obisim/rng.hpp"

#include <cmath>

namespace obisim {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed, RngStream stream) {
  std::uint64_t x = seed ^ (static_cast<std::uint64_t>(stream) * 0xd6e8feb86659fd93ULL);
  for (auto& s : s_) s = splitmix64(x);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

int Rng::uniform_int(int lo, int hi) {
  const int span = hi - lo + 1;
  int v = lo + static_cast<int>(uniform01() * span);
  return v > hi ? hi : v;
}

double Rng::normal(double mean, double sd) {
  if (has_cached_gauss_) {
    has_cached_gauss_ = false;
    return mean + sd * cached_gauss_;
  }
  double x1, x2, w;
  do {
    x1 = 2.0 * uniform01() - 1.0;
    x2 = 2.0 * uniform01() - 1.0;
    w = x1 * x1 + x2 * x2;
  } while (w >= 1.0 || w == 0.0);
  w = std::sqrt(-2.0 * std::log(w) / w);
  cached_gauss_ = x2 * w;
  has_cached_gauss_ = true;
  return mean + sd * x1 * w;
}

}  // namespace obisim
