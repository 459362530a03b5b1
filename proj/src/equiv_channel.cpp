#include "stbc/equiv_channel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace stbc {

namespace {

std::size_t positive_part(std::size_t a, std::size_t b) { return a > b ? a - b : 0; }

}  // namespace

EquivChannel build_equiv_channel(const WeightSet& w, const ComplexMatrix& h) {
  if (h.rows() != w.n() || h.cols() == 0) {
    throw LinalgError("build_equiv_channel: H must be N x M with N = " + std::to_string(w.n()));
  }
  EquivChannel ec;
  ec.m = h.cols();
  ec.groups = w.groups();
  std::vector<RealVector> columns;
  columns.reserve(w.k());
  for (const auto& a : w.matrices()) columns.push_back(tilde_vec(a * h));
  ec.g = hstack_columns(columns);
  for (const auto& group : ec.groups) ec.group_blocks.push_back(select_columns(ec.g, group));
  return ec;
}

std::size_t f_rank(std::size_t n, std::size_t m) {
  const std::size_t deficit = positive_part(n, m);
  return n * n - deficit * deficit;
}

RankPrediction predict_rank(const FamilyParams& family, std::size_t m) {
  if (m == 0) throw CodeError("predict_rank: M must be at least 1");
  RankPrediction p;
  p.family = family.family;
  switch (family.family) {
    case Family::kHermBasis:
      if (family.n == 0) throw CodeError("predict_rank: herm requires N >= 1");
      p.group_sizes = {family.n * family.n};
      p.group_ranks = {f_rank(family.n, m)};
      break;
    case Family::kFgdRen:
      p.group_sizes = {1, 16};
      p.group_ranks = {1, f_rank(4, m)};
      break;
    case Family::kNatarajanG2: {
      // g = 2 gives the antenna multiplier 2^floor((g-1)/2) = 1.
      const std::size_t n = family.n;
      if (n == 0) throw CodeError("predict_rank: natarajan-g2 requires n >= 1");
      p.group_sizes = {n * n + 1, n * n + 1};
      p.group_ranks = {f_rank(n, m) + 1, f_rank(n, m) + 1};
      break;
    }
    case Family::kRyggzBasis: {
      const std::size_t n = family.n;
      const std::size_t t = family.t;
      if (n == 0 || t % 2 != 0 || t < 2 * n) throw CodeError("predict_rank: ryggz-basis requires even T >= 2N");
      p.group_sizes = {t * n - n * n + 1};
      p.group_ranks = {(t - 2 * n) * std::min(n, m) + f_rank(n, m) + 1};
      break;
    }
  }
  for (std::size_t s : p.group_sizes) p.k += s;
  for (std::size_t r : p.group_ranks) p.total += r;
  p.singular = p.total < p.k;
  return p;
}

std::size_t table_exponent(const FamilyParams& family, std::size_t m) {
  switch (family.family) {
    case Family::kHermBasis: {
      const std::size_t d = positive_part(family.n, m);
      return d * d;
    }
    case Family::kFgdRen: {
      const std::size_t d = positive_part(4, m);
      return d * d;
    }
    case Family::kNatarajanG2: {
      const std::size_t d = positive_part(family.n, m);
      return d * d;
    }
    case Family::kRyggzBasis: {
      const std::size_t d = positive_part(family.n, m);
      return d == 0 ? 0 : d * (family.t - family.n - m);
    }
  }
  throw CodeError("table_exponent: unsupported family");
}

RankStats rank_monte_carlo(const WeightSet& w, std::size_t m, std::size_t trials, const RandomSource& rng,
                           std::optional<std::size_t> predicted, double rel_tol) {
  if (trials == 0) throw CodeError("rank_monte_carlo: trials must be at least 1");
  RankStats stats;
  stats.trials = trials;
  stats.predicted = predicted;
  std::size_t matches = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    RandomSource trial_rng = rng.child(trial);
    const ComplexMatrix h = sample_channel(w.n(), m, trial_rng);
    const std::size_t rank = numerical_rank(build_equiv_channel(w, h).g, rel_tol);
    ++stats.histogram[rank];
    if (predicted && rank == *predicted) ++matches;
  }
  stats.match_fraction = predicted ? static_cast<double>(matches) / static_cast<double>(trials) : 0.0;
  return stats;
}

double group_orthogonality(const EquivChannel& ec) {
  if (ec.group_blocks.size() < 2) throw CodeError("group_orthogonality: needs at least two decoding groups");
  std::vector<RealMatrix> normalized = ec.group_blocks;
  for (auto& block : normalized) {
    for (std::size_t j = 0; j < block.cols(); ++j) {
      auto col = block.column(j);
      const double norm = std::sqrt(squared_norm(col));
      if (norm > 0.0)
        for (double& x : col) x /= norm;
    }
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < normalized.size(); ++a)
    for (std::size_t b = a + 1; b < normalized.size(); ++b)
      for (std::size_t i = 0; i < normalized[a].cols(); ++i)
        for (std::size_t j = 0; j < normalized[b].cols(); ++j) {
          auto u = normalized[a].column(i);
          auto v = normalized[b].column(j);
          double dot = 0.0;
          for (std::size_t r = 0; r < u.size(); ++r) dot += u[r] * v[r];
          worst = std::max(worst, std::abs(dot));
        }
  return worst;
}

AdditivityReport rank_additivity_check(const EquivChannel& ec, double rel_tol) {
  AdditivityReport report;
  report.total_rank = numerical_rank(ec.g, rel_tol);
  std::size_t sum = 0;
  for (const auto& block : ec.group_blocks) {
    report.group_ranks.push_back(numerical_rank(block, rel_tol));
    sum += report.group_ranks.back();
  }
  report.additive = sum == report.total_rank;
  return report;
}

void write_rank_csv_row(std::ostream& out, const std::string& family, const WeightSet& w, std::size_t m,
                        const RankStats& stats) {
  std::ostringstream row;
  row << family << ',' << w.n() << ',' << w.t() << ',' << w.k() << ',' << m << ',' << stats.trials << ',';
  if (stats.predicted) row << *stats.predicted;
  row << ',' << stats.min_rank() << ',' << stats.max_rank() << ',' << std::fixed << std::setprecision(6)
      << stats.match_fraction;
  out << row.str() << '\n';
}

}  // namespace stbc
