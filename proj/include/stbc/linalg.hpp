#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stbc {

using Complex = std::complex<double>;
using RealVector = std::vector<double>;

class LinalgError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dense column-major matrix. Entries are required to be finite.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}
  // Column-major storage of exactly rows*cols entries.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> column_major);
  // Row-by-row literal, e.g. {{1, 2}, {3, 4}}.
  DenseMatrix(std::initializer_list<std::initializer_list<T>> rows);

  static DenseMatrix zeros(std::size_t rows, std::size_t cols) { return DenseMatrix(rows, cols); }
  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

  std::span<T> column(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
  std::span<const T> column(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }

  std::span<const T> data() const { return data_; }
  std::span<T> data() { return data_; }

  bool all_finite() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = DenseMatrix<Complex>;
using RealMatrix = DenseMatrix<double>;

extern template class DenseMatrix<double>;
extern template class DenseMatrix<Complex>;

// Arithmetic.
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
RealMatrix operator+(const RealMatrix& a, const RealMatrix& b);
RealMatrix operator-(const RealMatrix& a, const RealMatrix& b);
RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
RealMatrix operator*(double s, const RealMatrix& a);
RealVector operator*(const RealMatrix& a, std::span<const double> x);

ComplexMatrix adjoint(const ComplexMatrix& a);
RealMatrix transpose(const RealMatrix& a);
ComplexMatrix to_complex(const RealMatrix& a);

double frobenius_norm(const ComplexMatrix& a);
double frobenius_norm(const RealMatrix& a);
double max_abs(const RealMatrix& a);
double squared_norm(std::span<const double> v);

// Block helpers.
ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix vstack(std::span<const ComplexMatrix> blocks);
RealMatrix hstack_columns(std::span<const RealVector> columns);
RealMatrix select_columns(const RealMatrix& a, std::span<const std::size_t> cols);
RealMatrix select_block(const RealMatrix& a, std::size_t row0, std::size_t rows,
                        std::size_t col0, std::size_t cols);

// Column-major vec of the real part stacked over column-major vec of the
// imaginary part; length 2*rows*cols.
RealVector tilde_vec(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Real 2r x 2c representation [[Re, -Im], [Im, Re]] of a complex r x c
// matrix; its real rank is twice the complex rank.
RealMatrix realify(const ComplexMatrix& a);

enum class Pivoting { kNone, kColumn };

struct QrFactorization {
  RealMatrix q;  // rows x rows, orthogonal
  RealMatrix r;  // rows x cols, upper triangular (stored zeros below)
  // permutation[j] is the input column placed at position j: (A P)(:, j) = A(:, permutation[j]).
  std::vector<std::size_t> permutation;
};

// Householder QR. With column pivoting the diagonal magnitudes of r are
// non-increasing. Without pivoting, a column that is numerically dependent on
// its predecessors gets a Q direction orthogonal to all later columns where
// one exists, so its row of r is zero.
QrFactorization qr_decompose(const RealMatrix& a, Pivoting pivoting);

inline constexpr double kDefaultRankTolerance = 1e-9;

// Singular values in non-increasing order (one-sided Jacobi).
RealVector singular_values(const RealMatrix& a);

// Number of singular values above rel_tol * sigma_max * max(rows, cols).
std::size_t numerical_rank(const RealMatrix& a, double rel_tol = kDefaultRankTolerance);
std::size_t real_nullity(const RealMatrix& a, double rel_tol = kDefaultRankTolerance);

// Rank of a complex matrix over C.
std::size_t complex_rank(const ComplexMatrix& a, double rel_tol = kDefaultRankTolerance);

}  // namespace stbc
