#pragma once

#include <cstdint>

namespace koch {

// Counter-based splitmix64: stateless, splittable, identical for any thread
// partitioning of the counter range.
inline std::uint64_t rng_u64(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + counter * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double rng_unit(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(rng_u64(seed, counter) >> 11) * 0x1.0p-53;
}

}  // namespace koch
