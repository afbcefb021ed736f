#pragma once

#include <cstdint>
#include <random>

namespace eepc {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Sub-seed of trial `index` under `experiment_seed`. Depends only on the
/// pair, so trials can run in any order or in parallel.
constexpr std::uint64_t derive_seed(std::uint64_t experiment_seed,
                                    std::uint64_t index) noexcept {
  return mix64(mix64(experiment_seed) ^ (index * 0xD1B54A32D192ED03ULL + 1));
}

/// Uniform draw in the open interval (0, 1), built from the top 53 bits so the
/// stream is identical on every standard library.
inline double uniform_open01(Rng& rng) noexcept {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace eepc
