#include "stbc/codes.hpp"

#include <algorithm>
#include <numeric>

namespace stbc {

namespace {

const Complex kI{0.0, 1.0};

ComplexMatrix pauli_x() { return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_z() { return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix unit_matrix(std::size_t rows, std::size_t cols, std::size_t r, std::size_t c, Complex value) {
  ComplexMatrix e(rows, cols);
  e(r, c) = value;
  return e;
}

std::string n_label(std::size_t n) { return std::to_string(n); }

}  // namespace

WeightSet::WeightSet(std::string name, std::size_t t, std::size_t n, std::vector<ComplexMatrix> matrices,
                     GroupPartition groups)
    : name_(std::move(name)), t_(t), n_(n), matrices_(std::move(matrices)), groups_(std::move(groups)) {
  if (t_ == 0 || n_ == 0) throw CodeError("WeightSet: T and N must be positive");
  if (matrices_.empty()) throw CodeError("WeightSet: no weight matrices");
  for (const auto& a : matrices_) {
    if (a.rows() != t_ || a.cols() != n_) throw CodeError("WeightSet: weight matrix is not T x N");
  }
  std::vector<int> seen(matrices_.size(), 0);
  for (const auto& g : groups_) {
    if (g.empty()) throw CodeError("WeightSet: empty decoding group");
    for (std::size_t idx : g) {
      if (idx >= matrices_.size()) throw CodeError("WeightSet: group index out of range");
      if (seen[idx]++) throw CodeError("WeightSet: groups overlap");
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw CodeError("WeightSet: groups do not cover every symbol");
  }
}

GroupPartition single_group(std::size_t k) {
  std::vector<std::size_t> all(k);
  std::iota(all.begin(), all.end(), 0);
  return {all};
}

std::string_view family_token(Family family) {
  switch (family) {
    case Family::kHermBasis: return "herm";
    case Family::kFgdRen: return "fgd-ren";
    case Family::kNatarajanG2: return "natarajan-g2";
    case Family::kRyggzBasis: return "ryggz-basis";
  }
  return "unknown";
}

Family parse_family(std::string_view token) {
  for (Family f : {Family::kHermBasis, Family::kFgdRen, Family::kNatarajanG2, Family::kRyggzBasis}) {
    if (family_token(f) == token) return f;
  }
  throw CodeError("unknown code family '" + std::string(token) + "'");
}

std::vector<ComplexMatrix> pauli_hermitian_basis(int m) {
  if (m <= 0) throw CodeError("pauli_hermitian_basis: m must be at least 1");
  const ComplexMatrix x = pauli_x();
  const ComplexMatrix z = pauli_z();
  const std::vector<ComplexMatrix> factors = {ComplexMatrix::identity(2), x, kI * (x * z), z};
  std::vector<ComplexMatrix> basis = factors;
  for (int level = 1; level < m; ++level) {
    std::vector<ComplexMatrix> next;
    next.reserve(basis.size() * factors.size());
    for (const auto& b : basis)
      for (const auto& f : factors) next.push_back(kron(b, f));
    basis = std::move(next);
  }
  return basis;
}

std::vector<ComplexMatrix> herm3_basis() {
  const Complex i = kI;
  return {
      ComplexMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
      ComplexMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}},
      ComplexMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}},
      ComplexMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}},
      ComplexMatrix{{0, i, 0}, {-i, 0, 0}, {0, 0, 1}},
      ComplexMatrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}},
      ComplexMatrix{{0, 0, i}, {0, 1, 0}, {-i, 0, 0}},
      ComplexMatrix{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}},
      ComplexMatrix{{1, 0, 0}, {0, 0, i}, {0, -i, 0}},
  };
}

std::vector<ComplexMatrix> standard_hermitian_basis(std::size_t n) {
  if (n == 0) throw CodeError("standard_hermitian_basis: n must be positive");
  std::vector<ComplexMatrix> basis;
  basis.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) basis.push_back(unit_matrix(n, n, i, i, 1.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ComplexMatrix sym(n, n);
      sym(i, j) = 1.0;
      sym(j, i) = 1.0;
      basis.push_back(std::move(sym));
      ComplexMatrix anti(n, n);
      anti(i, j) = kI;
      anti(j, i) = -kI;
      basis.push_back(std::move(anti));
    }
  return basis;
}

bool has_unitary_hermitian_basis(std::size_t n) {
  return n == 3 || (n >= 2 && (n & (n - 1)) == 0);
}

std::vector<ComplexMatrix> unitary_hermitian_basis(std::size_t n) {
  if (n == 3) return herm3_basis();
  if (!has_unitary_hermitian_basis(n)) {
    throw CodeError("no unitary Hermitian basis constructor for n = " + n_label(n));
  }
  int m = 0;
  while ((std::size_t{1} << m) < n) ++m;
  return pauli_hermitian_basis(m);
}

WeightSet hermitian_basis_code(std::size_t n, HermFlavor flavor) {
  auto basis = flavor == HermFlavor::kUnitary ? unitary_hermitian_basis(n) : standard_hermitian_basis(n);
  const std::size_t k = basis.size();
  const std::string suffix = flavor == HermFlavor::kUnitary ? "" : "-std";
  return WeightSet("herm-n" + n_label(n) + suffix, n, n, std::move(basis), single_group(k));
}

WeightSet fgd_ren_code() {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  const ComplexMatrix x = pauli_x();
  const ComplexMatrix z = pauli_z();
  const ComplexMatrix zx = z * x;
  const Complex i = kI;
  std::vector<ComplexMatrix> a = {
      kron(i2, i2),         // A1
      i * kron(z, i2),      // A2
      kron(zx, i2),         // A3
      i * kron(x, z),       // A4
      kron(x, zx),          // A5
      i * kron(x, x),       // A6
      kron(i2, zx),         // A7
      i * kron(z, x),       // A8
      kron(zx, x),          // A9
      i * kron(zx, zx),     // A10
      kron(zx, z),          // A11
      i * kron(x, i2),      // A12
      kron(z, zx),          // A13
      i * kron(i2, x),      // A14
      i * kron(z, z),       // A15
      i * kron(i2, i2),     // A16
      i * kron(i2, z),      // A17
  };
  std::vector<std::size_t> second(16);
  std::iota(second.begin(), second.end(), 1);
  return WeightSet("fgd-ren", 4, 4, std::move(a), GroupPartition{{0}, second});
}

WeightSet block_diagonal_g2_code(std::size_t n) {
  if (!has_unitary_hermitian_basis(n)) {
    throw CodeError("block_diagonal_g2_code: unsupported block size n = " + n_label(n));
  }
  const auto b = unitary_hermitian_basis(n);
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix neg_id = Complex(-1.0) * id;
  std::vector<ComplexMatrix> a;
  a.reserve(2 * (b.size() + 1));
  for (const auto& bl : b) a.push_back(block_diag(kI * bl, id));
  a.push_back(block_diag(kI * b.front(), neg_id));
  for (const auto& bl : b) a.push_back(block_diag(id, kI * bl));
  a.push_back(block_diag(neg_id, kI * b.front()));

  const std::size_t half = b.size() + 1;
  std::vector<std::size_t> g1(half), g2(half);
  std::iota(g1.begin(), g1.end(), 0);
  std::iota(g2.begin(), g2.end(), half);
  return WeightSet("natarajan-g2-n" + n_label(n), 2 * n, 2 * n, std::move(a), GroupPartition{g1, g2});
}

WeightSet ryggz_basis_set(std::size_t n, std::size_t t) {
  if (n == 0) throw CodeError("ryggz_basis_set: n must be positive");
  if (t % 2 != 0 || t < 2 * n) throw CodeError("ryggz_basis_set: T must be even and at least 2N");
  const std::size_t half = t / 2;
  const std::size_t tail = half - n;
  std::vector<ComplexMatrix> a;

  ComplexMatrix f(t, n);
  for (std::size_t i = 0; i < n; ++i) f(i, i) = 1.0;
  a.push_back(std::move(f));

  for (const auto& b : standard_hermitian_basis(n)) {
    ComplexMatrix m(t, n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r) m(half + r, c) = b(r, c);
    a.push_back(std::move(m));
  }
  for (Complex unit : {Complex(1.0), kI})
    for (std::size_t r = 0; r < tail; ++r)
      for (std::size_t c = 0; c < n; ++c) a.push_back(unit_matrix(t, n, half + n + r, c, unit));

  const std::size_t k = a.size();
  return WeightSet("ryggz-basis-n" + n_label(n) + "-t" + std::to_string(t), t, n, std::move(a),
                   single_group(k));
}

WeightSet make_code(const FamilyParams& params) {
  switch (params.family) {
    case Family::kHermBasis:
      return hermitian_basis_code(params.n,
                                  has_unitary_hermitian_basis(params.n) ? HermFlavor::kUnitary : HermFlavor::kStandard);
    case Family::kFgdRen: return fgd_ren_code();
    case Family::kNatarajanG2: return block_diagonal_g2_code(params.n);
    case Family::kRyggzBasis: return ryggz_basis_set(params.n, params.t);
  }
  throw CodeError("make_code: unsupported family");
}

RealMatrix realified_weights(const std::vector<ComplexMatrix>& matrices) {
  std::vector<RealVector> cols;
  cols.reserve(matrices.size());
  for (const auto& a : matrices) cols.push_back(tilde_vec(a));
  return transpose(hstack_columns(cols));
}

WeightSet recombined(const WeightSet& w, const RealMatrix& mix) {
  if (mix.rows() != w.k() || mix.cols() != w.k()) throw CodeError("recombined: mix must be K x K");
  std::vector<ComplexMatrix> out;
  out.reserve(w.k());
  for (std::size_t i = 0; i < w.k(); ++i) {
    ComplexMatrix a(w.t(), w.n());
    for (std::size_t j = 0; j < w.k(); ++j) a = a + Complex(mix(j, i)) * w.matrices()[j];
    out.push_back(std::move(a));
  }
  return WeightSet(w.name() + "-recombined", w.t(), w.n(), std::move(out), w.groups());
}

WeightSet left_multiplied(const WeightSet& w, const ComplexMatrix& c) {
  if (c.rows() != w.t() || c.cols() != w.t()) throw CodeError("left_multiplied: C must be T x T");
  std::vector<ComplexMatrix> out;
  out.reserve(w.k());
  for (const auto& a : w.matrices()) out.push_back(c * a);
  return WeightSet(w.name() + "-left", w.t(), w.n(), std::move(out), w.groups());
}

ValidationReport validate_weight_set(const WeightSet& w) {
  ValidationReport report;
  report.realified_rank = numerical_rank(realified_weights(w.matrices()));
  report.linearly_independent = report.realified_rank == w.k();

  const auto& groups = w.groups();
  const auto& a = w.matrices();
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (std::size_t h = g + 1; h < groups.size(); ++h)
      for (std::size_t i : groups[g])
        for (std::size_t j : groups[h]) {
          const double residual = frobenius_norm(adjoint(a[i]) * a[j] + adjoint(a[j]) * a[i]);
          report.max_cross_group_residual = std::max(report.max_cross_group_residual, residual);
        }
  report.passed = report.linearly_independent &&
                  (groups.size() < 2 || report.max_cross_group_residual < kHurwitzRadonTolerance);
  return report;
}

}  // namespace stbc
