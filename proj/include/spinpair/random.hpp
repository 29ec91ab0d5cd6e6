// Seeded uniform source shared by the Monte Carlo routines. Uses only the raw
// mt19937_64 output so a seed yields the same stream with any standard library.

#pragma once

#include <cstdint>
#include <random>

namespace spinpair {

class SeededUniform {
 public:
  explicit SeededUniform(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) on the 2^-53 grid.
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 of (root, stream): independent seeds for parallel workers.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  std::uint64_t z = root + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace spinpair
