#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "stbc/codes.hpp"
#include "stbc/equiv_channel.hpp"
#include "stbc/linalg.hpp"
#include "stbc/random.hpp"

namespace stbc {

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// q-PAM alphabet {-(q-1), -(q-3), ..., q-1} per real symbol, optionally
// composed with a full-rank K x K generator theta (identity when absent).
class SignalSet {
 public:
  explicit SignalSet(int q);
  SignalSet(int q, RealMatrix theta);

  int q() const { return q_; }
  const std::vector<int>& alphabet() const { return alphabet_; }
  const std::optional<RealMatrix>& theta() const { return theta_; }

  // G * theta, or G itself for the identity generator.
  RealMatrix effective(const RealMatrix& g) const;
  // theta restricted to rows and columns `indices` (identity generator stays identity).
  SignalSet restricted(std::span<const std::size_t> indices) const;
  // Mean symbol energy (q^2 - 1) / 3.
  double symbol_energy() const;

 private:
  int q_;
  std::vector<int> alphabet_;
  std::optional<RealMatrix> theta_;
};

struct DecodeResult {
  std::vector<int> s_hat;
  double cost = 0.0;  // ||y - G theta s_hat||^2
  std::uint64_t nodes_visited = 0;
  std::uint64_t outer_candidates = 1;
  std::vector<DecodeResult> per_group;
};

struct TransmissionInstance {
  ComplexMatrix h;
  std::vector<int> s_true;
  RealVector y;
  double snr_db = 0.0;
  double noise_variance = 0.0;  // per real dimension
};

// y = G theta s + w with s uniform over alphabet^K and white Gaussian w scaled
// so that E||G theta s||^2 / E||w||^2 equals the requested SNR. snr_db = +inf
// gives a noiseless instance.
TransmissionInstance simulate_transmission(const WeightSet& w, const SignalSet& sig, const ComplexMatrix& h,
                                           double snr_db, RandomSource& rng);

inline constexpr std::uint64_t kDefaultBruteForceBudget = std::uint64_t{1} << 20;

// Exhaustive search in lexicographic order; exact cost ties keep the
// lexicographically smallest candidate.
DecodeResult brute_force_ml(const EquivChannel& ec, const SignalSet& sig, std::span<const double> y,
                            std::uint64_t budget = kDefaultBruteForceBudget);

// Schnorr-Euchner depth-first search for argmin ||z - R s||^2 over the
// alphabet, R square upper triangular with nonzero diagonal. `cost` is the
// residual in the R domain.
DecodeResult sphere_decode(const RealMatrix& r, std::span<const double> z, const SignalSet& sig);

// ML decoding for any rank of G theta: column-pivoted QR splits R into a
// full-rank R_a and R_b, and each of the q^(K-K') assignments of s_b is
// followed by a sphere search over s_a.
DecodeResult rank_deficient_decode(const EquivChannel& ec, const SignalSet& sig, std::span<const double> y);

// Decodes every group block independently with rank_deficient_decode.
// Requires mutually orthogonal group blocks and a group-block-diagonal theta.
DecodeResult multigroup_decode(const EquivChannel& ec, const SignalSet& sig, std::span<const double> y);

struct ScanPoint {
  int q = 0;
  std::size_t trials = 0;
  std::size_t k_prime_min = 0;
  std::size_t k_prime_max = 0;
  std::vector<std::size_t> group_exponents;  // lambda_k - rank(G_k), first trial
  std::size_t exponent = 0;                  // max group exponent (K - K' for one group)
  double avg_outer_candidates = 0.0;         // per trial, the largest group's count
  double avg_nodes = 0.0;
  bool exponent_stable = true;               // every trial had the same group exponents
  bool law_holds = true;                     // every group's outer count equals q^exponent
};

struct ScanReport {
  std::string code;
  std::size_t n = 0, t = 0, k = 0, m = 0;
  std::uint64_t seed = 0;
  std::vector<ScanPoint> points;
};

inline constexpr double kDefaultScanSnrDb = 20.0;

ScanReport complexity_scan(const WeightSet& w, std::size_t m, std::span<const int> q_list, std::size_t trials,
                           const RandomSource& rng, double snr_db = kDefaultScanSnrDb);

inline constexpr const char* kScanCsvHeader =
    "code,N,T,K,M,q,K_prime,exponent,outer_candidates,avg_nodes,trials,seed";
void write_scan_csv(std::ostream& out, const ScanReport& report,
                    std::optional<std::size_t> table_exponent = std::nullopt);

// Relative cost agreement used by the oracle-equivalence checks.
bool costs_agree(double a, double b, double rel_tol = 1e-9);

}  // namespace stbc
