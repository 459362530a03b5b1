#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "stbc/codes.hpp"
#include "stbc/linalg.hpp"
#include "stbc/random.hpp"

namespace stbc {

// Real 2MT x K matrix G = [tilde_vec(A_1 H) ... tilde_vec(A_K H)] with its
// per-group column blocks.
struct EquivChannel {
  RealMatrix g;
  std::vector<RealMatrix> group_blocks;
  GroupPartition groups;
  std::size_t m = 0;
};

EquivChannel build_equiv_channel(const WeightSet& w, const ComplexMatrix& h);

// n^2 - ((n - m)^+)^2.
std::size_t f_rank(std::size_t n, std::size_t m);

struct RankPrediction {
  Family family = Family::kHermBasis;
  std::vector<std::size_t> group_sizes;
  std::vector<std::size_t> group_ranks;
  std::size_t k = 0;
  std::size_t total = 0;  // K' = sum of group_ranks
  bool singular = false;  // K' < K
};

RankPrediction predict_rank(const FamilyParams& family, std::size_t m);

// Closed-form exponent of q in the sphere decoding complexity of one decoding
// group (the largest group exponent for multigroup codes).
std::size_t table_exponent(const FamilyParams& family, std::size_t m);

struct RankStats {
  std::size_t trials = 0;
  std::map<std::size_t, std::size_t> histogram;  // observed rank -> count
  std::optional<std::size_t> predicted;
  double match_fraction = 0.0;  // fraction of trials equal to `predicted`; 0 without one
  std::size_t min_rank() const { return histogram.empty() ? 0 : histogram.begin()->first; }
  std::size_t max_rank() const { return histogram.empty() ? 0 : histogram.rbegin()->first; }
};

// Trial i samples H from rng.child(i), so results do not depend on trial order.
RankStats rank_monte_carlo(const WeightSet& w, std::size_t m, std::size_t trials, const RandomSource& rng,
                           std::optional<std::size_t> predicted = std::nullopt,
                           double rel_tol = kDefaultRankTolerance);

inline constexpr double kGroupOrthogonalityTolerance = 1e-9;

// Max |<u, v>| over unit-normalized columns u, v from different group blocks.
double group_orthogonality(const EquivChannel& ec);

struct AdditivityReport {
  std::size_t total_rank = 0;
  std::vector<std::size_t> group_ranks;
  bool additive = false;
};

AdditivityReport rank_additivity_check(const EquivChannel& ec, double rel_tol = kDefaultRankTolerance);

// CSV row schema: family,N,T,K,M,trials,predicted_rank,min_rank,max_rank,match_fraction
inline constexpr const char* kRankCsvHeader = "family,N,T,K,M,trials,predicted_rank,min_rank,max_rank,match_fraction";
void write_rank_csv_row(std::ostream& out, const std::string& family, const WeightSet& w, std::size_t m,
                        const RankStats& stats);

}  // namespace stbc
