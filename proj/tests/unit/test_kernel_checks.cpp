#include <doctest.h>

#include <Eigen/Dense>

#include "stbc/codes.hpp"
#include "stbc/equiv_channel.hpp"
#include "stbc/kernel_checks.hpp"
#include "support.hpp"

using namespace stbc;

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) m(i, j) = a(i, j);
  return m;
}

// Kernel dimension of A -> A H over Hermitian A, with A parametrized by its
// real diagonal and the real and imaginary parts of its strict upper triangle.
std::size_t eigen_hermitian_nullity(const ComplexMatrix& h) {
  const auto n = static_cast<Eigen::Index>(h.rows());
  const auto m = static_cast<Eigen::Index>(h.cols());
  const Eigen::MatrixXcd he = to_eigen(h);
  std::vector<Eigen::MatrixXcd> basis;
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    a(i, i) = 1.0;
    basis.push_back(a);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Eigen::MatrixXcd re = Eigen::MatrixXcd::Zero(n, n);
      re(i, j) = re(j, i) = 1.0;
      basis.push_back(re);
      Eigen::MatrixXcd im = Eigen::MatrixXcd::Zero(n, n);
      im(i, j) = std::complex<double>(0, 1);
      im(j, i) = std::complex<double>(0, -1);
      basis.push_back(im);
    }
  }
  Eigen::MatrixXd map(2 * n * m, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Eigen::MatrixXcd image = basis[k] * he;
    Eigen::Index row = 0;
    for (Eigen::Index c = 0; c < m; ++c)
      for (Eigen::Index r = 0; r < n; ++r) {
        map(row, static_cast<Eigen::Index>(k)) = image(r, c).real();
        map(row + n * m, static_cast<Eigen::Index>(k)) = image(r, c).imag();
        ++row;
      }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(map);
  lu.setThreshold(1e-10);
  return static_cast<std::size_t>(lu.dimensionOfKernel());
}

}  // namespace

TEST_CASE("Hermitian kernel nullity matches an independent construction") {
  RandomSource rng(41);
  for (auto [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 2}, {4, 2}, {4, 3}, {5, 2}, {6, 4}, {3, 3}}) {
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix h = sample_channel(n, m, rng);
      const std::size_t d = n > m ? n - m : 0;
      CHECK(hermitian_kernel_nullity(h) == d * d);
      CHECK(eigen_hermitian_nullity(h) == d * d);
    }
  }
}

TEST_CASE("outer products of left null vectors lie in the Hermitian kernel") {
  RandomSource rng(5);
  const ComplexMatrix h = sample_channel(3, 2, rng);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(to_eigen(adjoint(h)));
  const Eigen::MatrixXcd kernel = lu.kernel();
  REQUIRE(kernel.cols() == 1);
  const Eigen::VectorXcd z = kernel.col(0);
  const Eigen::MatrixXcd a = z * z.adjoint();
  CHECK((a * to_eigen(h)).norm() < 1e-12 * a.norm());
}

TEST_CASE("left null space dimensions") {
  RandomSource rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix h = sample_channel(4, 2, rng);
    CHECK(left_null_dimension(h) == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(left_null_real_component_dimension(h, i) == 3);
      CHECK(augmented_rank(h, i) == 3);
    }
  }
  const ComplexMatrix square = sample_channel(3, 3, rng);
  CHECK(left_null_dimension(square) == 0);
  CHECK(augmented_rank(square, 0) == 3);
  CHECK_THROWS_AS(augmented_rank(square, 3), LinalgError);
}

TEST_CASE("the augmented column fails when H already contains e_i") {
  ComplexMatrix h(3, 2);
  h(0, 0) = 1.0;
  h(1, 1) = Complex(0.3, 0.7);
  CHECK(augmented_rank(h, 0) == 2);
  CHECK(augmented_rank(h, 2) == 3);
}

TEST_CASE("kernel check suites report zero failures") {
  const RandomSource rng(2);
  const KernelCheckReport a = run_kernel_checks(3, 2, 100, rng);
  CHECK(a.expected_nullity == 1);
  CHECK(a.total_failures() == 0);
  const KernelCheckReport b = run_kernel_checks(4, 2, 100, rng);
  CHECK(b.expected_nullity == 4);
  CHECK(b.expected_real_component == 3);
  CHECK(b.expected_left_null == 4);
  CHECK(b.total_failures() == 0);
  const KernelCheckReport full = run_kernel_checks(3, 4, 20, rng);
  CHECK(full.expected_nullity == 0);
  CHECK(full.total_failures() == 0);
  CHECK_THROWS_AS(run_kernel_checks(3, 2, 0, rng), LinalgError);
}
