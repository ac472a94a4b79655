#pragma once

#include <cstdint>

namespace mzk {

// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, increment
// 0x9e3779b97f4a7c15, output mix with shifts 30/27/31. Reproducible from the
// published constants in any language.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // 53-bit uniform in [0, 1).
  double uniform();
  // Standard normal via Box-Muller on two fresh uniforms (cosine branch).
  double normal();
  // Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);

  // Output mix of one SplitMix64 step.
  static std::uint64_t mix(std::uint64_t z);
  // Seed of an independent stream indexed by (a, b).
  static std::uint64_t stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

 private:
  std::uint64_t state_;
};

}  // namespace mzk
