#pragma once

#include <cstddef>

#include "stbc/linalg.hpp"
#include "stbc/random.hpp"

namespace stbc {

// Complex rank of [H e_i].
std::size_t augmented_rank(const ComplexMatrix& h, std::size_t i);

// Real dimension of S = {z in C^N : z^H H = 0}.
std::size_t left_null_dimension(const ComplexMatrix& h);

// Real dimension of the subspace of S whose i-th component is real.
std::size_t left_null_real_component_dimension(const ComplexMatrix& h, std::size_t i);

// Real nullity of the map A -> A H on the N^2-dimensional space of N x N
// Hermitian matrices.
std::size_t hermitian_kernel_nullity(const ComplexMatrix& h);

struct KernelCheckReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t trials = 0;
  std::size_t expected_nullity = 0;             // ((N - M)^+)^2
  std::size_t expected_left_null = 0;           // 2 (N - M)^+
  std::size_t expected_real_component = 0;      // 2 (N - M) - 1 when M < N, else 0
  std::size_t augmented_rank_failures = 0;      // rank([H e_i]) != M + 1, counted per (trial, i)
  std::size_t left_null_failures = 0;           // per trial
  std::size_t real_component_failures = 0;      // per (trial, i)
  std::size_t nullity_failures = 0;             // per trial
  std::size_t total_failures() const {
    return augmented_rank_failures + left_null_failures + real_component_failures + nullity_failures;
  }
};

// Runs every check on `trials` channels drawn from rng.child(trial). With
// M >= N the augmented-rank expectation is N and the other kernels are trivial.
KernelCheckReport run_kernel_checks(std::size_t n, std::size_t m, std::size_t trials, const RandomSource& rng);

}  // namespace stbc
