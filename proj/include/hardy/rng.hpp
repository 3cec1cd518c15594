#pragma once

#include <cstdint>
#include <random>

#include "hardy/types.hpp"

namespace hardy {

// Deterministic uniform draws that do not depend on the standard library's
// distribution implementations.
struct UniformRng {
  explicit UniformRng(std::uint64_t seed) : rng(seed) {}

  Scalar unit() { return static_cast<Scalar>(rng() >> 11) * 0x1.0p-53; }
  Scalar range(Scalar lo, Scalar hi) { return lo + (hi - lo) * unit(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); }

  std::mt19937_64 rng;
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k) {
  return seed + 0x9E3779B97F4A7C15ull * (k + 1);
}

}  // namespace hardy
