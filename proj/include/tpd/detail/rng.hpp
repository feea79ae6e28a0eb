#pragma once

#include <cstdint>
#include <random>

namespace tpd::detail {

// All randomness in the library flows through these two helpers plus
// std::mt19937_64, whose output sequence is pinned by the standard. We
// deliberately avoid std::uniform_int_distribution (implementation-defined
// algorithm) so that seeded runs are reproducible across toolchains.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Value in [0, bound) via the multiply-shift reduction. Bias is at most
// bound / 2^64, irrelevant at the bounds used here (all < 2^32).
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const unsigned __int128 wide = static_cast<unsigned __int128>(rng()) * bound;
  return static_cast<std::uint64_t>(wide >> 64);
}

}  // namespace tpd::detail
