#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include "stbc/linalg.hpp"
#include "stbc/random.hpp"

namespace stbc::test {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(STBC_FIXTURE_DIR) / name;
}

inline RealMatrix random_real(std::size_t rows, std::size_t cols, RandomSource& rng) {
  RealMatrix a(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) a(i, j) = rng.normal();
  return a;
}

inline ComplexMatrix random_complex(std::size_t rows, std::size_t cols, RandomSource& rng) {
  ComplexMatrix a(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) a(i, j) = Complex(rng.normal(), rng.normal());
  return a;
}

}  // namespace stbc::test
