#include "heckfa/rng.hpp"

#include <cmath>

namespace heckfa::rng {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t state = seed ^ 0x243f6a8885a308d3ull;
  std::uint64_t out = splitmix64(state);
  for (std::uint64_t p : path) {
    state ^= p;
    out = splitmix64(state);
  }
  return out;
}

double Stream::uniform01() {
  // 53-bit mantissa; shift guarantees u in [0, 1), the loop excludes 0.
  for (;;) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

double Stream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 6.283185307179586476925286766559 * u2;
  cached_normal_ = r * std::sin(theta);
  has_cached_normal_ = true;
  return r * std::cos(theta);
}

double Stream::gumbel() { return -std::log(-std::log(uniform01())); }

}  // namespace heckfa::rng
