#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "stbc/linalg.hpp"

namespace stbc {

// Seeded sample stream. Distributions are computed from raw mt19937_64 output
// so that a seed reproduces the same samples on every standard library.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Independent stream for trial `index`, a pure function of (seed, index).
  RandomSource child(std::uint64_t index) const;

  std::uint64_t next_u64() { return engine_(); }
  double uniform();  // [0, 1)
  double normal();   // N(0, 1)
  std::size_t uniform_index(std::size_t n);  // [0, n)

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

// N x M matrix of i.i.d. circularly symmetric complex Gaussians with unit
// total variance per entry.
ComplexMatrix sample_channel(std::size_t n, std::size_t m, RandomSource& rng);

}  // namespace stbc
