#pragma once

#include <cstdint>

#include "sqbias/distribution.hpp"

namespace sqbias {

// splitmix64: tiny, seedable, reproducible across platforms. Used for every
// randomized verification suite so that reports are deterministic functions
// of the seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  int uniform_int(int n) {  // 0..n-1
    const int v = static_cast<int>(uniform01() * n);
    return v >= n ? n - 1 : v;
  }

 private:
  std::uint64_t state_;
};

// 2-6 atoms uniform in [-5,5], probabilities from a flat simplex sample,
// then standardized to mean 0 and variance 1. Draws with nearly coincident
// atoms or tiny spread are rejected and redrawn.
Distribution random_standardized_law(SplitMix64& rng);

// Symmetric standardized discrete law: +-a_i with equal masses, scaled to
// variance 1.
Distribution random_symmetric_standardized_law(SplitMix64& rng);

// 2-6 atoms uniform in [0.1, 5] with simplex probabilities; not standardized.
Distribution random_nonnegative_law(SplitMix64& rng);

}  // namespace sqbias
