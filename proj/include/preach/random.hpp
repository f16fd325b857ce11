#pragma once

#include <cstdint>
#include <random>

namespace preach {

// All generators draw from a seeded 64-bit Mersenne Twister. The bounded
// mapping below is spelled out instead of using std::uniform_int_distribution,
// whose output differs between standard library implementations.
using Rng = std::mt19937_64;

// Uniform integer in [0, bound). bound must be nonzero.
inline std::uint64_t uniform_below(Rng &rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - Rng::max() % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit)
      return x % bound;
  }
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform_unit(Rng &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace preach
