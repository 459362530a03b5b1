#include "stbc/kernel_checks.hpp"

#include <algorithm>

#include "stbc/codes.hpp"
#include "stbc/equiv_channel.hpp"

namespace stbc {

std::size_t augmented_rank(const ComplexMatrix& h, std::size_t i) {
  if (i >= h.rows()) throw LinalgError("augmented_rank: index out of range");
  ComplexMatrix aug(h.rows(), h.cols() + 1);
  for (std::size_t c = 0; c < h.cols(); ++c)
    for (std::size_t r = 0; r < h.rows(); ++r) aug(r, c) = h(r, c);
  aug(i, h.cols()) = 1.0;
  return complex_rank(aug);
}

std::size_t left_null_dimension(const ComplexMatrix& h) {
  // z^H H = 0  <=>  H^H z = 0, as a real system in [Re z; Im z].
  return real_nullity(realify(adjoint(h)));
}

std::size_t left_null_real_component_dimension(const ComplexMatrix& h, std::size_t i) {
  const std::size_t n = h.rows();
  if (i >= n) throw LinalgError("left_null_real_component_dimension: index out of range");
  const RealMatrix system = realify(adjoint(h));
  RealMatrix constrained(system.rows() + 1, system.cols());
  for (std::size_t c = 0; c < system.cols(); ++c)
    for (std::size_t r = 0; r < system.rows(); ++r) constrained(r, c) = system(r, c);
  constrained(system.rows(), n + i) = 1.0;
  return real_nullity(constrained);
}

std::size_t hermitian_kernel_nullity(const ComplexMatrix& h) {
  const WeightSet basis = hermitian_basis_code(h.rows(), HermFlavor::kStandard);
  return real_nullity(build_equiv_channel(basis, h).g);
}

KernelCheckReport run_kernel_checks(std::size_t n, std::size_t m, std::size_t trials, const RandomSource& rng) {
  if (n == 0 || m == 0 || trials == 0) throw LinalgError("run_kernel_checks: N, M and trials must be positive");
  KernelCheckReport report;
  report.n = n;
  report.m = m;
  report.trials = trials;
  const std::size_t deficit = n > m ? n - m : 0;
  report.expected_nullity = deficit * deficit;
  report.expected_left_null = 2 * deficit;
  report.expected_real_component = deficit > 0 ? 2 * deficit - 1 : 0;
  const std::size_t expected_augmented = std::min(m + 1, n);

  for (std::size_t trial = 0; trial < trials; ++trial) {
    RandomSource trial_rng = rng.child(trial);
    const ComplexMatrix h = sample_channel(n, m, trial_rng);
    for (std::size_t i = 0; i < n; ++i) {
      if (augmented_rank(h, i) != expected_augmented) ++report.augmented_rank_failures;
      if (left_null_real_component_dimension(h, i) != report.expected_real_component) {
        ++report.real_component_failures;
      }
    }
    if (left_null_dimension(h) != report.expected_left_null) ++report.left_null_failures;
    if (hermitian_kernel_nullity(h) != report.expected_nullity) ++report.nullity_failures;
  }
  return report;
}

}  // namespace stbc
