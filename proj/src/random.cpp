#include "stbc/random.hpp"

#include <cmath>
#include <numbers>

namespace stbc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RandomSource RandomSource::child(std::uint64_t index) const {
  return RandomSource(splitmix64(splitmix64(seed_) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

double RandomSource::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double RandomSource::normal() {
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 == 0.0);
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

std::size_t RandomSource::uniform_index(std::size_t n) {
  if (n <= 1) return 0;
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = 0;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

ComplexMatrix sample_channel(std::size_t n, std::size_t m, RandomSource& rng) {
  if (n == 0 || m == 0) throw LinalgError("sample_channel: dimensions must be positive");
  ComplexMatrix h(n, m);
  const double scale = std::sqrt(0.5);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      h(i, j) = Complex(scale * re, scale * im);
    }
  return h;
}

}  // namespace stbc
