#pragma once
#include <cstdint>
#include <random>

namespace ebcm {

/// The one generator type used by every unit network.
using Rng = std::mt19937_64;

inline constexpr const char* kRngAlgorithm = "mt19937_64";

/// Uniform deviate in [0,1) from the top 53 bits. Kept independent of the
/// standard library's distribution code so streams are portable.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform deviate in [lo, hi).
inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// Uniform index in [0, n).
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
}

/// Stream seed for sweep point `index` of a run seeded with `seed`.
constexpr std::uint64_t point_seed(std::uint64_t seed, std::uint64_t index) noexcept { return seed ^ index; }

} // namespace ebcm
