#pragma once

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, counter), so results do not depend on call order, thread
// scheduling or the standard library's distribution implementations.

#include <cstdint>

#include "latmech/types.hpp"

namespace latmech {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derive an independent seed, e.g. one per perturbation realization.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) { return mix64(mix64(seed) ^ mix64(~tag)); }

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : key_(mix64(mix64(seed) + stream)) {}

  std::uint64_t bits(std::uint64_t counter) const { return mix64(key_ ^ mix64(counter)); }

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal (Box-Muller, cosine branch) from counters 2c and 2c+1.
  double normal(std::uint64_t counter) const;

  /// Uniform direction on the unit sphere: normalised triple of normals
  /// drawn at counters 3*index .. 3*index+2.
  Vec3 unit_vector(std::uint64_t index) const;

  /// Haar-uniform rotation from a normalised quaternion of four normals.
  Mat3 rotation(std::uint64_t index) const;

 private:
  std::uint64_t key_;
};

}  // namespace latmech
