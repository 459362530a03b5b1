#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "stbc/linalg.hpp"

namespace stbc {

class CodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using GroupPartition = std::vector<std::vector<std::size_t>>;

// The K weight matrices of a linear-dispersion STBC and its ML-decoding group
// partition. Indices in `groups` are 0-based positions into `matrices`.
class WeightSet {
 public:
  // Throws CodeError unless every matrix is t x n and `groups` partitions
  // {0..K-1} into nonempty sets. Linear independence is a separate check
  // (validate_weight_set).
  WeightSet(std::string name, std::size_t t, std::size_t n, std::vector<ComplexMatrix> matrices,
            GroupPartition groups);

  const std::string& name() const { return name_; }
  std::size_t t() const { return t_; }
  std::size_t n() const { return n_; }
  std::size_t k() const { return matrices_.size(); }
  std::size_t num_groups() const { return groups_.size(); }
  const std::vector<ComplexMatrix>& matrices() const { return matrices_; }
  const GroupPartition& groups() const { return groups_; }

  // Rate in complex symbols per channel use, K / (2T).
  double rate() const { return static_cast<double>(k()) / (2.0 * static_cast<double>(t_)); }

 private:
  std::string name_;
  std::size_t t_;
  std::size_t n_;
  std::vector<ComplexMatrix> matrices_;
  GroupPartition groups_;
};

// Single group {0..k-1}.
GroupPartition single_group(std::size_t k);

enum class Family { kHermBasis, kFgdRen, kNatarajanG2, kRyggzBasis };

// Command-line token for each family: herm, fgd-ren, natarajan-g2, ryggz-basis.
std::string_view family_token(Family family);
Family parse_family(std::string_view token);

struct FamilyParams {
  Family family = Family::kHermBasis;
  std::size_t n = 0;  // herm: N; natarajan-g2: block size n (N = 2n); ryggz-basis: N
  std::size_t t = 0;  // ryggz-basis only
};

enum class HermFlavor {
  kUnitary,   // unitary and Hermitian weights; N a power of two or 3
  kStandard,  // canonical Hermitian basis, any N
};

// All m-fold Kronecker products of {I, X, iXZ, Z}; 4^m matrices of size 2^m.
std::vector<ComplexMatrix> pauli_hermitian_basis(int m);

// Nine unitary Hermitian 3 x 3 matrices spanning the 3 x 3 Hermitian space.
std::vector<ComplexMatrix> herm3_basis();

// E_ii, then (E_ij + E_ji) and i(E_ij - E_ji) for each i < j.
std::vector<ComplexMatrix> standard_hermitian_basis(std::size_t n);

bool has_unitary_hermitian_basis(std::size_t n);

// Unitary Hermitian basis for n = 2^m or n = 3.
std::vector<ComplexMatrix> unitary_hermitian_basis(std::size_t n);

// T = N, K = N^2, one group.
WeightSet hermitian_basis_code(std::size_t n, HermFlavor flavor = HermFlavor::kUnitary);

// Two-group fast-group-decodable code for N = T = 4 with K = 17: group
// {x1} with weight I_4 and sixteen skew-Hermitian Pauli products.
WeightSet fgd_ren_code();

// Two-group block-diagonal code with N = T = 2n and n^2 + 1 symbols per group:
//   group 1: diag(i B_l, I_n) for l = 1..n^2, then diag(i B_1, -I_n)
//   group 2: diag(I_n, i B_l) for l = 1..n^2, then diag(-I_n, i B_1)
// where B_l is the unitary Hermitian basis. Its per-group rank law matches the
// g = 2 block-diagonal family with N = 2^m as well.
WeightSet block_diagonal_g2_code(std::size_t n);

// Span basis of one decoding group of the unbalanced two-group codes with
// T >= 2N even: [F;0;0] with F = [I_N; 0], [0;B_l;0] for a Hermitian basis B_l,
// and [0;0;E_l] over the real and imaginary unit matrices of size (T/2-N) x N.
// K = TN - N^2 + 1, one group.
WeightSet ryggz_basis_set(std::size_t n, std::size_t t);

// Constructs the family member named by `params`. HermBasis uses the unitary
// flavor when available and the standard basis otherwise.
WeightSet make_code(const FamilyParams& params);

struct ValidationReport {
  bool linearly_independent = false;
  std::size_t realified_rank = 0;
  // max over cross-group pairs of ||A_i^H A_j + A_j^H A_i||_F; 0 for one group.
  double max_cross_group_residual = 0.0;
  bool passed = false;
};

inline constexpr double kHurwitzRadonTolerance = 1e-12;

ValidationReport validate_weight_set(const WeightSet& w);

// K x 2TN matrix whose rows are tilde_vec(A_i).
RealMatrix realified_weights(const std::vector<ComplexMatrix>& matrices);

// Weight matrices sum_j mix(j, i) A_j. `mix` must be K x K; the grouping is kept.
WeightSet recombined(const WeightSet& w, const RealMatrix& mix);
// Every A_i replaced by C A_i with C a T x T matrix.
WeightSet left_multiplied(const WeightSet& w, const ComplexMatrix& c);

}  // namespace stbc
