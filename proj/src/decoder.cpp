#include "stbc/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

namespace stbc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kMaxOrderedCandidates = std::uint64_t{1} << 20;
// Costs closer than this (relative, floor 1) are ties and go to the lexicographic rule.
constexpr double kTieRelTol = 1e-12;

double tie_slack(double cost) { return kTieRelTol * std::max(cost, 1.0); }

bool is_tie(double a, double b) { return std::abs(a - b) <= tie_slack(std::max(a, b)); }

// Lexicographic comparison of a and b read in the index order `order`.
bool lex_less(std::span<const int> a, std::span<const int> b, std::span<const std::size_t> order) {
  for (std::size_t idx : order) {
    if (a[idx] != b[idx]) return a[idx] < b[idx];
  }
  return false;
}

// q^e, or nullopt on overflow past `cap`.
std::optional<std::uint64_t> checked_power(std::uint64_t q, std::size_t e, std::uint64_t cap) {
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (p > cap / q) return std::nullopt;
    p *= q;
  }
  return p;
}

double residual_cost(const RealMatrix& b, std::span<const double> y, std::span<const int> s) {
  RealVector r(y.begin(), y.end());
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j] == 0) continue;
    auto col = b.column(j);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= col[i] * s[j];
  }
  return squared_norm(r);
}

// Depth-first Schnorr-Euchner search over an upper-triangular system.
class SphereSearch {
 public:
  // `lex_order` lists the positions in the order used for tie-breaking (identity when empty).
  SphereSearch(const RealMatrix& r, std::span<const double> z, std::span<const int> alphabet,
               std::vector<std::size_t> lex_order = {})
      : r_(r), z_(z), alphabet_(alphabet), current_(r.cols(), 0),
        orders_(r.cols(), std::vector<std::size_t>(alphabet.size())), lex_order_(std::move(lex_order)) {
    if (lex_order_.empty()) {
      lex_order_.resize(r.cols());
      std::iota(lex_order_.begin(), lex_order_.end(), 0);
    }
  }

  // Searches for points with cost <= bound (up to the tie slack). On success
  // `best` holds the minimizer, ties to the lexicographically smallest, and
  // bound its cost.
  bool run(double& bound, std::vector<int>& best) {
    bound_ = bound;
    found_ = false;
    best_ = &best;
    if (r_.cols() == 0) {
      // Empty subproblem: the single point has zero residual.
      if (0.0 <= bound_) {
        best.clear();
        bound = 0.0;
        return true;
      }
      return false;
    }
    descend(r_.cols() - 1, 0.0);
    if (found_) bound = bound_;
    return found_;
  }

  // Cost of the leaf reached by taking the nearest symbol at every level.
  double greedy_cost() {
    double partial = 0.0;
    for (std::size_t level = r_.cols(); level-- > 0;) {
      const double rkk = r_(level, level);
      double interference = 0.0;
      for (std::size_t j = level + 1; j < r_.cols(); ++j) interference += r_(level, j) * current_[j];
      const double center = (z_[level] - interference) / rkk;
      int nearest = alphabet_.front();
      for (int a : alphabet_)
        if (std::abs(a - center) < std::abs(nearest - center)) nearest = a;
      current_[level] = nearest;
      const double offset = rkk * (nearest - center);
      partial += offset * offset;
    }
    return partial;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  void descend(std::size_t level, double partial) {
    const double rkk = r_(level, level);
    double interference = 0.0;
    for (std::size_t j = level + 1; j < r_.cols(); ++j) interference += r_(level, j) * current_[j];
    const double center = (z_[level] - interference) / rkk;

    // Zig-zag order: non-decreasing distance from the center, ties to the smaller symbol.
    std::vector<std::size_t>& order = orders_[level];
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(alphabet_[a] - center) < std::abs(alphabet_[b] - center);
    });

    for (std::size_t idx : order) {
      ++nodes_;
      const double offset = rkk * (alphabet_[idx] - center);
      const double p = partial + offset * offset;
      if (p > bound_ + tie_slack(bound_)) break;
      current_[level] = alphabet_[idx];
      if (level == 0) {
        accept(p);
      } else {
        descend(level - 1, p);
      }
    }
  }

  void accept(double cost) {
    if (cost > bound_ + tie_slack(bound_)) return;
    if (found_ && is_tie(cost, bound_)) {
      if (!lex_less(current_, *best_, lex_order_)) return;
      bound_ = std::max(bound_, cost);
    } else if (cost < bound_ || !found_) {
      bound_ = cost;
    }
    *best_ = current_;
    found_ = true;
  }

  const RealMatrix& r_;
  std::span<const double> z_;
  std::span<const int> alphabet_;
  std::vector<int> current_;
  std::vector<std::vector<std::size_t>> orders_;
  std::vector<std::size_t> lex_order_;
  std::vector<int>* best_ = nullptr;
  double bound_ = kInf;
  bool found_ = false;
  std::uint64_t nodes_ = 0;
};

void require_length(const RealMatrix& g, std::span<const double> y, const char* what) {
  if (y.size() != g.rows()) throw DecodeError(std::string(what) + ": y length does not match G");
}

}  // namespace

SignalSet::SignalSet(int q) : q_(q) {
  if (q < 2) throw DecodeError("SignalSet: q must be at least 2");
  for (int a = -(q - 1); a <= q - 1; a += 2) alphabet_.push_back(a);
}

SignalSet::SignalSet(int q, RealMatrix theta) : SignalSet(q) {
  if (theta.rows() != theta.cols()) throw DecodeError("SignalSet: theta must be square");
  if (numerical_rank(theta) != theta.rows()) throw DecodeError("SignalSet: theta must be full rank");
  theta_ = std::move(theta);
}

RealMatrix SignalSet::effective(const RealMatrix& g) const {
  if (!theta_) return g;
  if (theta_->rows() != g.cols()) throw DecodeError("SignalSet: theta size does not match K");
  return g * *theta_;
}

SignalSet SignalSet::restricted(std::span<const std::size_t> indices) const {
  if (!theta_) return SignalSet(q_);
  RealMatrix sub(indices.size(), indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j)
    for (std::size_t i = 0; i < indices.size(); ++i) sub(i, j) = (*theta_)(indices[i], indices[j]);
  return SignalSet(q_, std::move(sub));
}

double SignalSet::symbol_energy() const { return (static_cast<double>(q_) * q_ - 1.0) / 3.0; }

TransmissionInstance simulate_transmission(const WeightSet& w, const SignalSet& sig, const ComplexMatrix& h,
                                           double snr_db, RandomSource& rng) {
  if (std::isnan(snr_db) || snr_db == -kInf) throw DecodeError("simulate_transmission: SNR must be finite or +inf");
  const EquivChannel ec = build_equiv_channel(w, h);
  const RealMatrix b = sig.effective(ec.g);

  TransmissionInstance inst;
  inst.h = h;
  inst.snr_db = snr_db;
  inst.s_true.resize(w.k());
  for (auto& s : inst.s_true) s = sig.alphabet()[rng.uniform_index(sig.alphabet().size())];

  std::vector<double> s_real(inst.s_true.begin(), inst.s_true.end());
  inst.y = b * s_real;
  if (snr_db != kInf) {
    const double dims = static_cast<double>(b.rows());
    const double signal = sig.symbol_energy() * squared_norm(b.data());
    inst.noise_variance = signal / (dims * std::pow(10.0, snr_db / 10.0));
    const double sigma = std::sqrt(inst.noise_variance);
    for (double& v : inst.y) v += sigma * rng.normal();
  }
  return inst;
}

DecodeResult brute_force_ml(const EquivChannel& ec, const SignalSet& sig, std::span<const double> y,
                            std::uint64_t budget) {
  require_length(ec.g, y, "brute_force_ml");
  const RealMatrix b = sig.effective(ec.g);
  const std::size_t k = b.cols();
  const auto& alphabet = sig.alphabet();
  const auto q = static_cast<std::uint64_t>(alphabet.size());
  const auto total = checked_power(q, k, budget);
  if (!total) throw DecodeError("brute_force_ml: q^K exceeds the candidate budget");

  std::vector<std::size_t> digits(k, 0);
  std::vector<int> s(k, alphabet.front());
  RealVector residual(y.begin(), y.end());
  auto resync = [&] {
    std::copy(y.begin(), y.end(), residual.begin());
    for (std::size_t j = 0; j < k; ++j) {
      auto col = b.column(j);
      for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= col[i] * s[j];
    }
  };
  resync();

  DecodeResult best;
  best.cost = kInf;
  best.nodes_visited = *total;
  best.outer_candidates = 1;
  // Leading digits change rarely; recomputing the residual there bounds drift.
  const std::size_t resync_below = k > 8 ? k - 8 : 0;
  for (std::uint64_t count = 0; count < *total; ++count) {
    const double cost = squared_norm(residual);
    // Enumeration is lexicographic, so a later tie never replaces the incumbent.
    if (best.s_hat.empty() || (cost < best.cost && !is_tie(cost, best.cost))) {
      best.cost = cost;
      best.s_hat = s;
    }
    if (count + 1 == *total) break;
    // Odometer increment, last symbol fastest: lexicographic order.
    std::size_t pos = k;
    bool needs_resync = false;
    while (pos-- > 0) {
      const int old = s[pos];
      if (digits[pos] + 1 < alphabet.size()) {
        ++digits[pos];
        s[pos] = alphabet[digits[pos]];
      } else {
        digits[pos] = 0;
        s[pos] = alphabet.front();
      }
      if (pos < resync_below) {
        needs_resync = true;
      } else {
        const double delta = s[pos] - old;
        auto col = b.column(pos);
        for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= col[i] * delta;
      }
      if (digits[pos] != 0) break;
    }
    if (needs_resync) resync();
  }
  best.cost = residual_cost(b, y, best.s_hat);
  return best;
}

DecodeResult sphere_decode(const RealMatrix& r, std::span<const double> z, const SignalSet& sig) {
  if (r.rows() != r.cols()) throw DecodeError("sphere_decode: R must be square");
  if (z.size() != r.rows()) throw DecodeError("sphere_decode: z length does not match R");
  for (std::size_t i = 0; i < r.rows(); ++i) {
    if (r(i, i) == 0.0) throw DecodeError("sphere_decode: singular diagonal entry");
    for (std::size_t j = 0; j < i; ++j) {
      if (r(i, j) != 0.0) throw DecodeError("sphere_decode: R must be upper triangular");
    }
  }
  SphereSearch search(r, z, sig.alphabet());
  DecodeResult out;
  double bound = kInf;
  search.run(bound, out.s_hat);
  out.cost = bound;
  out.nodes_visited = search.nodes();
  out.outer_candidates = 1;
  return out;
}

DecodeResult rank_deficient_decode(const EquivChannel& ec, const SignalSet& sig, std::span<const double> y) {
  require_length(ec.g, y, "rank_deficient_decode");
  const RealMatrix b = sig.effective(ec.g);
  const std::size_t k = b.cols();
  const std::size_t rows = b.rows();
  const std::size_t k_prime = numerical_rank(b);
  const std::size_t k_b = k - k_prime;
  const auto& alphabet = sig.alphabet();
  const auto q = static_cast<std::uint64_t>(alphabet.size());
  const auto outer_total = checked_power(q, k_b, std::numeric_limits<std::uint64_t>::max());
  if (!outer_total) throw DecodeError("rank_deficient_decode: q^(K-K') overflows");

  const QrFactorization qr = qr_decompose(b, Pivoting::kColumn);
  const RealVector z = transpose(qr.q) * y;
  const RealMatrix r_a = select_block(qr.r, 0, k_prime, 0, k_prime);
  const RealMatrix r_b = select_block(qr.r, 0, k_prime, k_prime, k_b);
  // Rows at and beyond K' of R are numerically zero; their part of z is a constant.
  double constant = 0.0;
  for (std::size_t i = k_prime; i < rows; ++i) constant += z[i] * z[i];

  DecodeResult best;
  best.cost = kInf;
  best.outer_candidates = *outer_total;
  std::vector<int> s_a;
  std::vector<int> s_b(k_b);
  std::vector<int> full(k);
  RealVector z_a(k_prime);
  // Inner ties compare s_a in the original symbol order; s_b is shared by both candidates.
  std::vector<std::size_t> inner_lex(k_prime);
  std::iota(inner_lex.begin(), inner_lex.end(), 0);
  std::sort(inner_lex.begin(), inner_lex.end(),
            [&](std::size_t a, std::size_t b) { return qr.permutation[a] < qr.permutation[b]; });
  SphereSearch search(r_a, z_a, alphabet, inner_lex);

  // s_b for candidate index c: base-q digits of c, most significant first.
  auto load_candidate = [&](std::uint64_t c) {
    for (std::size_t pos = k_b; pos-- > 0;) {
      s_b[pos] = alphabet[c % q];
      c /= q;
    }
    for (std::size_t i = 0; i < k_prime; ++i) {
      double v = z[i];
      for (std::size_t j = 0; j < k_b; ++j) v -= r_b(i, j) * s_b[j];
      z_a[i] = v;
    }
  };

  // Candidates with a cheap greedy leaf go first so the shared bound tightens early.
  std::vector<std::uint64_t> visit;
  if (*outer_total > 1 && *outer_total <= kMaxOrderedCandidates) {
    std::vector<double> greedy(*outer_total);
    for (std::uint64_t c = 0; c < *outer_total; ++c) {
      load_candidate(c);
      greedy[c] = search.greedy_cost();
    }
    visit.resize(*outer_total);
    std::iota(visit.begin(), visit.end(), std::uint64_t{0});
    std::stable_sort(visit.begin(), visit.end(), [&](std::uint64_t a, std::uint64_t b) { return greedy[a] < greedy[b]; });
  }

  double best_total = kInf;
  for (std::uint64_t step = 0; step < *outer_total; ++step) {
    load_candidate(visit.empty() ? step : visit[step]);
    double inner_bound = best_total == kInf ? kInf : std::max(0.0, best_total - constant + tie_slack(best_total));
    if (search.run(inner_bound, s_a)) {
      const double total = inner_bound + constant;
      for (std::size_t j = 0; j < k_prime; ++j) full[qr.permutation[j]] = s_a[j];
      for (std::size_t j = 0; j < k_b; ++j) full[qr.permutation[k_prime + j]] = s_b[j];
      const bool tie = !best.s_hat.empty() && is_tie(total, best_total);
      if (best.s_hat.empty() || (tie ? std::lexicographical_compare(full.begin(), full.end(), best.s_hat.begin(),
                                                                    best.s_hat.end())
                                     : total < best_total)) {
        best_total = tie ? std::max(best_total, total) : total;
        best.s_hat = full;
      }
    }
  }
  best.nodes_visited = search.nodes();
  best.cost = residual_cost(b, y, best.s_hat);
  return best;
}

DecodeResult multigroup_decode(const EquivChannel& ec, const SignalSet& sig, std::span<const double> y) {
  require_length(ec.g, y, "multigroup_decode");
  if (ec.groups.size() < 2) {
    DecodeResult single = rank_deficient_decode(ec, sig, y);
    single.per_group = {single};
    return single;
  }
  if (group_orthogonality(ec) >= kGroupOrthogonalityTolerance) {
    throw DecodeError("multigroup_decode: group blocks are not mutually orthogonal");
  }
  if (const auto& theta = sig.theta()) {
    std::vector<std::size_t> owner(ec.g.cols());
    for (std::size_t gi = 0; gi < ec.groups.size(); ++gi)
      for (std::size_t idx : ec.groups[gi]) owner[idx] = gi;
    for (std::size_t j = 0; j < theta->cols(); ++j)
      for (std::size_t i = 0; i < theta->rows(); ++i)
        if (owner[i] != owner[j] && (*theta)(i, j) != 0.0) {
          throw DecodeError("multigroup_decode: theta couples decoding groups");
        }
  }

  DecodeResult out;
  out.s_hat.assign(ec.g.cols(), 0);
  out.nodes_visited = 0;
  out.outer_candidates = 0;
  for (std::size_t gi = 0; gi < ec.groups.size(); ++gi) {
    const auto& group = ec.groups[gi];
    EquivChannel sub;
    sub.g = ec.group_blocks[gi];
    sub.group_blocks = {sub.g};
    sub.groups = single_group(group.size());
    sub.m = ec.m;
    DecodeResult part = rank_deficient_decode(sub, sig.restricted(group), y);
    for (std::size_t j = 0; j < group.size(); ++j) out.s_hat[group[j]] = part.s_hat[j];
    out.nodes_visited += part.nodes_visited;
    out.outer_candidates += part.outer_candidates;
    out.per_group.push_back(std::move(part));
  }
  out.cost = residual_cost(sig.effective(ec.g), y, out.s_hat);
  return out;
}

ScanReport complexity_scan(const WeightSet& w, std::size_t m, std::span<const int> q_list, std::size_t trials,
                           const RandomSource& rng, double snr_db) {
  if (trials == 0) throw DecodeError("complexity_scan: trials must be at least 1");
  ScanReport report;
  report.code = w.name();
  report.n = w.n();
  report.t = w.t();
  report.k = w.k();
  report.m = m;
  report.seed = rng.seed();
  const bool multigroup = w.num_groups() > 1;

  for (int q : q_list) {
    const SignalSet sig(q);
    ScanPoint point;
    point.q = q;
    point.trials = trials;
    point.k_prime_min = std::numeric_limits<std::size_t>::max();
    double outer_sum = 0.0;
    double nodes_sum = 0.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      RandomSource trial_rng = rng.child(trial);
      const ComplexMatrix h = sample_channel(w.n(), m, trial_rng);
      const TransmissionInstance inst = simulate_transmission(w, sig, h, snr_db, trial_rng);
      const EquivChannel ec = build_equiv_channel(w, h);
      const DecodeResult res = multigroup ? multigroup_decode(ec, sig, inst.y) : rank_deficient_decode(ec, sig, inst.y);
      const std::vector<DecodeResult> parts = multigroup ? res.per_group : std::vector<DecodeResult>{res};

      std::vector<std::size_t> exponents;
      std::size_t k_prime = 0;
      std::uint64_t largest_outer = 0;
      for (std::size_t gi = 0; gi < parts.size(); ++gi) {
        const RealMatrix& block = multigroup ? ec.group_blocks[gi] : ec.g;
        const std::size_t rank = numerical_rank(block);
        const std::size_t e = block.cols() - rank;
        k_prime += rank;
        exponents.push_back(e);
        const auto expected = checked_power(static_cast<std::uint64_t>(q), e, std::numeric_limits<std::uint64_t>::max());
        if (!expected || parts[gi].outer_candidates != *expected) point.law_holds = false;
        largest_outer = std::max(largest_outer, parts[gi].outer_candidates);
      }
      if (trial == 0) {
        point.group_exponents = exponents;
      } else if (exponents != point.group_exponents) {
        point.exponent_stable = false;
      }
      point.k_prime_min = std::min(point.k_prime_min, k_prime);
      point.k_prime_max = std::max(point.k_prime_max, k_prime);
      outer_sum += static_cast<double>(largest_outer);
      nodes_sum += static_cast<double>(res.nodes_visited);
    }
    point.exponent = *std::max_element(point.group_exponents.begin(), point.group_exponents.end());
    point.avg_outer_candidates = outer_sum / static_cast<double>(trials);
    point.avg_nodes = nodes_sum / static_cast<double>(trials);
    report.points.push_back(std::move(point));
  }
  return report;
}

void write_scan_csv(std::ostream& out, const ScanReport& report, std::optional<std::size_t> table_exponent) {
  out << kScanCsvHeader << (table_exponent ? ",table_exponent" : "") << '\n';
  for (const auto& p : report.points) {
    std::ostringstream row;
    row << report.code << ',' << report.n << ',' << report.t << ',' << report.k << ',' << report.m << ',' << p.q
        << ',' << p.k_prime_min << ',' << p.exponent << ',' << std::setprecision(12) << p.avg_outer_candidates << ','
        << std::fixed << std::setprecision(2) << p.avg_nodes << ',' << p.trials << ',' << report.seed;
    if (table_exponent) row << ',' << *table_exponent;
    out << row.str() << '\n';
  }
}

bool costs_agree(double a, double b, double rel_tol) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= rel_tol * scale;
}

}  // namespace stbc
