#pragma once

#include <cstdint>
#include <random>

namespace consensus {

// Deterministic sampling helpers on top of mt19937_64. std::*_distribution
// output is implementation-defined, so graph generators and tests draw
// through these to keep results identical across standard libraries.

inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

/// Uniform integer in [0, bound), bound >= 1. Rejection-free Lemire reduction.
inline uint64_t uniform_index(std::mt19937_64& rng, uint64_t bound) {
  // Multiply-shift with rejection of the biased band.
  uint64_t threshold = (-bound) % bound;
  for (;;) {
    uint64_t x = rng();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    if (static_cast<uint64_t>(m) >= threshold) return static_cast<uint64_t>(m >> 64);
  }
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {  // inclusive range
  return lo + static_cast<int>(uniform_index(rng, static_cast<uint64_t>(hi - lo + 1)));
}

}  // namespace consensus
