#include "mzk/rng.hpp"

#include <cmath>
#include <numbers>

namespace mzk {

namespace {
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += kGamma;
  return mix(state_);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::normal() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::int64_t SplitMix64::integer(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  const auto k = static_cast<std::uint64_t>(static_cast<double>(span) * uniform());
  return lo + static_cast<std::int64_t>(k < span ? k : span - 1);
}

std::uint64_t SplitMix64::stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix(mix(seed + kGamma * (a + 1)) + kGamma * (b + 1));
}

}  // namespace mzk
