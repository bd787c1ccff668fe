#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace nvb {

/// 64-bit LCG x' = a x + c mod 2^64 (Knuth's MMIX constants).
using Lcg = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0>;

/// Index in [0, count) from the high bits of the next LCG state.
inline std::size_t random_index(Lcg& rng, std::size_t count) {
  return static_cast<std::size_t>((rng() >> 33) % count);
}

}  // namespace nvb
