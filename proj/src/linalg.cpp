#include "stbc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

namespace stbc {

namespace {

bool finite_entry(double x) { return std::isfinite(x); }
bool finite_entry(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

template <typename T>
void require_same_shape(const DenseMatrix<T>& a, const DenseMatrix<T>& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw LinalgError(std::string(what) + ": shape mismatch");
  }
}

template <typename T>
DenseMatrix<T> elementwise(const DenseMatrix<T>& a, const DenseMatrix<T>& b, bool subtract) {
  require_same_shape(a, b, subtract ? "operator-" : "operator+");
  DenseMatrix<T> out(a.rows(), a.cols());
  auto src_a = a.data();
  auto src_b = b.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = subtract ? src_a[i] - src_b[i] : src_a[i] + src_b[i];
  return out;
}

template <typename T>
DenseMatrix<T> multiply(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.cols() != b.rows()) throw LinalgError("operator*: inner dimension mismatch");
  DenseMatrix<T> out(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T bkj = b(k, j);
      if (bkj == T{}) continue;
      for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) += a(i, k) * bkj;
    }
  }
  return out;
}

double column_norm(const RealMatrix& a, std::size_t col, std::size_t row0) {
  double s = 0.0;
  for (std::size_t i = row0; i < a.rows(); ++i) s += a(i, col) * a(i, col);
  return std::sqrt(s);
}

// H = I - 2 v v^T / (v^T v) acting on rows [start, start + v.size()).
struct Reflector {
  std::size_t start = 0;
  RealVector v;
  double vv = 0.0;  // zero means identity
};

void apply_left(const Reflector& h, RealMatrix& a, std::size_t col0) {
  if (h.vv == 0.0) return;
  for (std::size_t c = col0; c < a.cols(); ++c) {
    double dot = 0.0;
    for (std::size_t i = 0; i < h.v.size(); ++i) dot += h.v[i] * a(h.start + i, c);
    const double f = 2.0 * dot / h.vv;
    if (f == 0.0) continue;
    for (std::size_t i = 0; i < h.v.size(); ++i) a(h.start + i, c) -= f * h.v[i];
  }
}

QrFactorization householder_qr(const RealMatrix& a, Pivoting pivoting, double dependent_tol);

// Unit vector u in the trailing row space (rows k..m-1) with u^T W(k:, k+1:) = 0,
// if the trailing columns leave such a direction.
std::optional<RealVector> deferred_direction(const RealMatrix& w, std::size_t k, double tol) {
  const std::size_t p = w.rows() - k;
  const std::size_t r = w.cols() - k - 1;
  if (r == 0) return std::nullopt;
  const RealMatrix trailing = select_block(w, k, p, k + 1, r);
  const QrFactorization f = householder_qr(trailing, Pivoting::kColumn, tol);
  std::size_t rank = 0;
  for (std::size_t i = 0; i < std::min(p, r); ++i) {
    if (std::abs(f.r(i, i)) > tol) ++rank;
  }
  if (rank >= p) return std::nullopt;
  auto col = f.q.column(rank);
  return RealVector(col.begin(), col.end());
}

QrFactorization householder_qr(const RealMatrix& a, Pivoting pivoting, double dependent_tol) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  RealMatrix w = a;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Reflector> reflectors;

  const std::size_t steps = std::min(m, n);
  for (std::size_t k = 0; k < steps; ++k) {
    if (pivoting == Pivoting::kColumn) {
      std::size_t best = k;
      double best_norm = -1.0;
      for (std::size_t j = k; j < n; ++j) {
        const double nj = column_norm(w, j, k);
        if (nj > best_norm) {
          best_norm = nj;
          best = j;
        }
      }
      if (best != k) {
        for (std::size_t i = 0; i < m; ++i) std::swap(w(i, k), w(i, best));
        std::swap(perm[k], perm[best]);
      }
    }

    const double norm_x = column_norm(w, k, k);
    Reflector h;
    h.start = k;
    if (pivoting == Pivoting::kNone && norm_x <= dependent_tol) {
      if (auto u = deferred_direction(w, k, dependent_tol)) {
        h.v = std::move(*u);
        h.v[0] -= 1.0;
        h.vv = squared_norm(h.v);
        apply_left(h, w, k);
      }
      // The sub-threshold residual below the diagonal is discarded.
      for (std::size_t i = k + 1; i < m; ++i) w(i, k) = 0.0;
    } else {
      double tail = 0.0;
      for (std::size_t i = k + 1; i < m; ++i) tail += w(i, k) * w(i, k);
      if (tail > 0.0) {
        const double x0 = w(k, k);
        const double alpha = x0 >= 0.0 ? -norm_x : norm_x;
        h.v.assign(m - k, 0.0);
        for (std::size_t i = k; i < m; ++i) h.v[i - k] = w(i, k);
        h.v[0] -= alpha;
        h.vv = squared_norm(h.v);
        apply_left(h, w, k + 1);
        w(k, k) = alpha;
        for (std::size_t i = k + 1; i < m; ++i) w(i, k) = 0.0;
      }
    }
    if (h.vv != 0.0) reflectors.push_back(std::move(h));
  }

  QrFactorization out;
  out.q = RealMatrix::identity(m);
  for (auto it = reflectors.rbegin(); it != reflectors.rend(); ++it) apply_left(*it, out.q, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j + 1; i < m; ++i) w(i, j) = 0.0;
  }
  out.r = std::move(w);
  out.permutation = std::move(perm);
  return out;
}

}  // namespace

template <typename T>
DenseMatrix<T>::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> column_major)
    : rows_(rows), cols_(cols), data_(std::move(column_major)) {
  if (data_.size() != rows * cols) throw LinalgError("DenseMatrix: entry count does not match shape");
  if (!all_finite()) throw LinalgError("DenseMatrix: non-finite entry");
}

template <typename T>
DenseMatrix<T>::DenseMatrix(std::initializer_list<std::initializer_list<T>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.assign(rows_ * cols_, T{});
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols_) throw LinalgError("DenseMatrix: ragged row literal");
    std::size_t c = 0;
    for (const auto& x : row) (*this)(r, c++) = x;
    ++r;
  }
  if (!all_finite()) throw LinalgError("DenseMatrix: non-finite entry");
}

template <typename T>
DenseMatrix<T> DenseMatrix<T>::identity(std::size_t n) {
  DenseMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = T{1};
  return out;
}

template <typename T>
bool DenseMatrix<T>::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const T& x) { return finite_entry(x); });
}

template class DenseMatrix<double>;
template class DenseMatrix<Complex>;

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) { return elementwise(a, b, false); }
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) { return elementwise(a, b, true); }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return multiply(a, b); }
RealMatrix operator+(const RealMatrix& a, const RealMatrix& b) { return elementwise(a, b, false); }
RealMatrix operator-(const RealMatrix& a, const RealMatrix& b) { return elementwise(a, b, true); }
RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) { return multiply(a, b); }

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (auto& x : out.data()) x *= s;
  return out;
}

RealMatrix operator*(double s, const RealMatrix& a) {
  RealMatrix out = a;
  for (auto& x : out.data()) x *= s;
  return out;
}

RealVector operator*(const RealMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw LinalgError("matrix-vector: dimension mismatch");
  RealVector out(a.rows(), 0.0);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (x[j] == 0.0) continue;
    auto col = a.column(j);
    for (std::size_t i = 0; i < a.rows(); ++i) out[i] += col[i] * x[j];
  }
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) out(j, i) = std::conj(a(i, j));
  return out;
}

RealMatrix transpose(const RealMatrix& a) {
  RealMatrix out(a.cols(), a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) out(j, i) = a(i, j);
  return out;
}

ComplexMatrix to_complex(const RealMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) = a(i, j);
  return out;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

double frobenius_norm(const RealMatrix& a) { return std::sqrt(squared_norm(a.data())); }

double max_abs(const RealMatrix& a) {
  double m = 0.0;
  for (double x : a.data()) m = std::max(m, std::abs(x));
  return m;
}

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) = a(i, j);
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t i = 0; i < b.rows(); ++i) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

ComplexMatrix vstack(std::span<const ComplexMatrix> blocks) {
  if (blocks.empty()) return {};
  const std::size_t cols = blocks.front().cols();
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw LinalgError("vstack: column count mismatch");
    rows += b.rows();
  }
  ComplexMatrix out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = 0; i < b.rows(); ++i) out(r0 + i, j) = b(i, j);
    r0 += b.rows();
  }
  return out;
}

RealMatrix hstack_columns(std::span<const RealVector> columns) {
  if (columns.empty()) return {};
  const std::size_t rows = columns.front().size();
  std::vector<double> data;
  data.reserve(rows * columns.size());
  for (const auto& c : columns) {
    if (c.size() != rows) throw LinalgError("hstack_columns: length mismatch");
    data.insert(data.end(), c.begin(), c.end());
  }
  return RealMatrix(rows, columns.size(), std::move(data));
}

RealMatrix select_columns(const RealMatrix& a, std::span<const std::size_t> cols) {
  RealMatrix out(a.rows(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= a.cols()) throw LinalgError("select_columns: index out of range");
    auto src = a.column(cols[j]);
    std::copy(src.begin(), src.end(), out.column(j).begin());
  }
  return out;
}

RealMatrix select_block(const RealMatrix& a, std::size_t row0, std::size_t rows, std::size_t col0,
                        std::size_t cols) {
  if (row0 + rows > a.rows() || col0 + cols > a.cols()) throw LinalgError("select_block: out of range");
  RealMatrix out(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = a(row0 + i, col0 + j);
  return out;
}

RealVector tilde_vec(const ComplexMatrix& a) {
  const auto entries = a.data();
  RealVector out(2 * entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out[i] = entries[i].real();
    out[entries.size() + i] = entries[i].imag();
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ja = 0; ja < a.cols(); ++ja)
    for (std::size_t ia = 0; ia < a.rows(); ++ia) {
      const Complex s = a(ia, ja);
      for (std::size_t jb = 0; jb < b.cols(); ++jb)
        for (std::size_t ib = 0; ib < b.rows(); ++ib)
          out(ia * b.rows() + ib, ja * b.cols() + jb) = s * b(ib, jb);
    }
  return out;
}

RealMatrix realify(const ComplexMatrix& a) {
  const std::size_t r = a.rows();
  const std::size_t c = a.cols();
  RealMatrix out(2 * r, 2 * c);
  for (std::size_t j = 0; j < c; ++j)
    for (std::size_t i = 0; i < r; ++i) {
      const double re = a(i, j).real();
      const double im = a(i, j).imag();
      out(i, j) = re;
      out(i, c + j) = -im;
      out(r + i, j) = im;
      out(r + i, c + j) = re;
    }
  return out;
}

QrFactorization qr_decompose(const RealMatrix& a, Pivoting pivoting) {
  if (a.rows() == 0 || a.cols() == 0) throw LinalgError("qr_decompose: empty matrix");
  double scale = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) scale = std::max(scale, column_norm(a, j, 0));
  const double tol = kDefaultRankTolerance * static_cast<double>(std::max(a.rows(), a.cols())) * scale;
  return householder_qr(a, pivoting, tol);
}

RealVector singular_values(const RealMatrix& a) {
  RealMatrix u = a.rows() >= a.cols() ? a : transpose(a);
  const std::size_t m = u.rows();
  const std::size_t n = u.cols();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += u(i, p) * u(i, p);
          beta += u(i, q) * u(i, q);
          gamma += u(i, p) * u(i, q);
        }
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double up = u(i, p);
          const double uq = u(i, q);
          u(i, p) = c * up - s * uq;
          u(i, q) = s * up + c * uq;
        }
      }
    }
    if (!rotated) break;
  }
  RealVector sv(n);
  for (std::size_t j = 0; j < n; ++j) sv[j] = column_norm(u, j, 0);
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

std::size_t numerical_rank(const RealMatrix& a, double rel_tol) {
  if (!(rel_tol > 0.0)) throw LinalgError("numerical_rank: rel_tol must be positive");
  if (a.empty()) return 0;
  const RealVector sv = singular_values(a);
  if (sv.empty() || sv.front() == 0.0) return 0;
  const double threshold = rel_tol * sv.front() * static_cast<double>(std::max(a.rows(), a.cols()));
  return static_cast<std::size_t>(std::count_if(sv.begin(), sv.end(), [&](double s) { return s > threshold; }));
}

std::size_t real_nullity(const RealMatrix& a, double rel_tol) { return a.cols() - numerical_rank(a, rel_tol); }

std::size_t complex_rank(const ComplexMatrix& a, double rel_tol) { return numerical_rank(realify(a), rel_tol) / 2; }

}  // namespace stbc
