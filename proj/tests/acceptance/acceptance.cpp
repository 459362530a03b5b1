// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stbc/codes.hpp"
#include "stbc/decoder.hpp"
#include "stbc/equiv_channel.hpp"
#include "stbc/experiments.hpp"
#include "stbc/io.hpp"
#include "stbc/kernel_checks.hpp"

using namespace stbc;
using nlohmann::json;

namespace {

const std::filesystem::path kFixtures{STBC_FIXTURE_DIR};

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

json run_json(std::vector<std::string> args, int& code) {
  args.push_back("--format");
  args.push_back("json");
  args.push_back("--no-timestamp");
  std::ostringstream out, err;
  code = cli::run_cli(args, out, err);
  if (out.str().empty()) return json::object();
  return json::parse(out.str());
}

std::uint64_t ipow(std::uint64_t q, std::size_t e) {
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < e; ++i) p *= q;
  return p;
}

std::string s(std::size_t v) { return std::to_string(v); }

Verdict hermitian_rank_law() {
  Verdict v;
  std::size_t cases = 0;
  for (std::size_t n : {2, 3, 4, 8}) {
    for (std::size_t m = 1; m <= n + 1; ++m) {
      int code = 0;
      const json j = run_json({"rank", "--family", "herm", "--n", s(n), "--m", s(m), "--trials", "200", "--seed", "101"},
                              code);
      const std::size_t expected = m < n ? n * n - (n - m) * (n - m) : n * n;
      const auto& hist = j.at("histogram");
      const bool exact = code == 0 && hist.size() == 1 && hist.contains(s(expected)) && hist.at(s(expected)) == 200;
      v.require(exact, "N=" + s(n) + " M=" + s(m));
      ++cases;
    }
  }
  v.require(f_rank(3, 2) == 8, "f(3,2)=8");
  v.require(f_rank(4, 3) == 15, "f(4,3)=15");
  v.detail << cases << " (N,M) cases x 200 trials exact; f(3,2)=" << f_rank(3, 2) << ", f(4,3)=" << f_rank(4, 3);
  return v;
}

Verdict fgd_example() {
  Verdict v;
  const WeightSet w = fgd_ren_code();
  const ComplexMatrix h = load_channel_fixture(kFixtures / "fgd_ren_h_4x3.json");
  const EquivChannel ec = build_equiv_channel(w, h);
  const std::size_t rank = numerical_rank(ec.g);
  v.require(rank == 16, "fixture rank 16");

  const cli::RPattern p = cli::r_pattern(qr_decompose(ec.g, Pivoting::kNone).r);
  v.require(p.zero_trailing_rows() == 8, "8 zero trailing rows");
  bool leading_diag = true;
  for (std::size_t k = 0; k < 16; ++k) leading_diag = leading_diag && p.at(k, k);
  v.require(leading_diag, "first 16 columns independent");
  bool dependent = true;
  for (std::size_t r = 16; r < 24; ++r) dependent = dependent && !p.at(r, 16);
  v.require(dependent, "17th column in the span of the first 16");

  const RandomSource rng(202);
  const RankStats m3 = rank_monte_carlo(w, 3, 200, rng, 16);
  v.require(m3.match_fraction == 1.0, "M=3 all 16");
  bool full = true;
  for (std::size_t m : {4, 5, 6}) full = full && rank_monte_carlo(w, m, 200, rng.child(m), 17).match_fraction == 1.0;
  v.require(full, "M>=4 all 17");
  v.detail << "fixture rank " << rank << ", zero trailing rows " << p.zero_trailing_rows()
           << ", M=3: 200/200 rank 16, M=4..6: 200/200 rank 17";
  return v;
}

Verdict block_diagonal_example() {
  Verdict v;
  const ComplexMatrix h = load_channel_fixture(kFixtures / "natarajan_g2_n3_h_6x2.json");
  const EquivChannel ec = build_equiv_channel(block_diagonal_g2_code(3), h);
  const AdditivityReport add = rank_additivity_check(ec);
  v.require(add.total_rank == 18, "fixture rank 18");
  v.require(add.group_ranks == std::vector<std::size_t>{9, 9} && add.additive, "group ranks 9+9");
  const cli::RPattern p = cli::r_pattern(qr_decompose(ec.g, Pivoting::kNone).r);
  bool zero_block = true;
  for (std::size_t r = 0; r < 10; ++r)
    for (std::size_t c = 10; c < 20; ++c) zero_block = zero_block && !p.at(r, c);
  v.require(zero_block, "10x10 upper-right zero block");
  v.detail << "fixture rank " << add.total_rank << " = " << add.group_ranks[0] << " + " << add.group_ranks[1]
           << ", upper-right 10x10 block " << (zero_block ? "all zero" : "NONZERO");
  return v;
}

Verdict unbalanced_rank_formula() {
  Verdict v;
  std::size_t cases = 0;
  const RandomSource rng(303);
  for (auto [n, t] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 6}, {4, 8}}) {
    const WeightSet w = ryggz_basis_set(n, t);
    for (std::size_t m = 1; m <= n; ++m) {
      const std::size_t formula = (t - 2 * n) * std::min(n, m) + f_rank(n, m) + 1;
      v.require(formula == predict_rank({Family::kRyggzBasis, n, t}, m).total, "prediction formula");
      const RankStats st = rank_monte_carlo(w, m, 200, rng.child(100 * n + m), formula);
      v.require(st.match_fraction == 1.0, "N=" + s(n) + " T=" + s(t) + " M=" + s(m));
      ++cases;
    }
  }
  const std::size_t paper_case = predict_rank({Family::kRyggzBasis, 4, 8}, 3).total;
  v.require(paper_case == 16, "(4,8,3) -> 16");
  v.detail << cases << " (N,T,M) cases x 200 trials exact; (4,8,3) rank " << paper_case;
  return v;
}

Verdict kernel_suite() {
  Verdict v;
  std::size_t failures = 0;
  for (auto [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 2}, {4, 2}, {4, 3}, {6, 4}}) {
    const KernelCheckReport r = run_kernel_checks(n, m, 100, RandomSource(404).child(10 * n + m));
    v.require(r.expected_nullity == (n - m) * (n - m), "nullity formula");
    v.require(r.expected_real_component == 2 * (n - m) - 1, "ker(phi_i) formula");
    v.require(r.total_failures() == 0, "N=" + s(n) + " M=" + s(m));
    failures += r.total_failures();
  }
  v.detail << "4 (N,M) cases x 100 trials, " << failures << " failures";
  return v;
}

Verdict decoder_equivalence(std::size_t& law_violations) {
  Verdict v;
  struct Case {
    std::vector<std::string> args;
    std::string label;
  };
  const std::vector<Case> cases = {
      {{"decode", "--family", "herm", "--n", "2", "--m", "1", "--q", "2,4", "--trials", "500"}, "herm N=2 M=1 q=2,4"},
      {{"decode", "--family", "herm", "--n", "3", "--m", "2", "--q", "2", "--trials", "500"}, "herm N=3 M=2 q=2"},
      {{"decode", "--family", "natarajan-g2", "--n", "3", "--m", "2", "--q", "2", "--trials", "200"},
       "natarajan-g2 n=3 M=2 q=2"},
  };
  std::size_t instances = 0;
  std::size_t mismatches = 0;
  for (const auto& c : cases) {
    int code = 0;
    const json j = run_json(c.args, code);
    v.require(code == 0, c.label);
    for (const auto& p : j.at("points")) {
      mismatches += p.at("rank_deficient_mismatches").get<std::size_t>();
      if (!p.at("multigroup_mismatches").is_null()) mismatches += p.at("multigroup_mismatches").get<std::size_t>();
      law_violations += p.at("law_violations").get<std::size_t>();
      instances += p.at("instances").get<std::size_t>();
    }
  }
  v.require(mismatches == 0, "zero mismatches");
  v.detail << instances << " instances, " << mismatches << " mismatches against brute force";
  return v;
}

Verdict complexity_law(std::size_t decode_law_violations) {
  Verdict v;
  v.require(decode_law_violations == 0, "outer = q^(K-K') on every decode");
  struct Case {
    FamilyParams f;
    std::size_t m;
    std::vector<std::size_t> group_exponents;
    std::size_t exponent;
  };
  const std::vector<Case> cases = {{{Family::kHermBasis, 4, 0}, 3, {1}, 1},
                                   {{Family::kNatarajanG2, 3, 0}, 2, {1, 1}, 1},
                                   {{Family::kRyggzBasis, 4, 8}, 3, {1}, 1},
                                   {{Family::kHermBasis, 4, 0}, 2, {4}, 4}};
  const std::vector<int> qs{2, 4, 8};
  std::ostringstream outer_h42;
  for (const auto& c : cases) {
    const WeightSet w = make_code(c.f);
    const ScanReport r = complexity_scan(w, c.m, qs, 10, RandomSource(505));
    const std::string label = w.name() + " M=" + s(c.m);
    v.require(table_exponent(c.f, c.m) == c.exponent, label + " closed form");
    for (const auto& p : r.points) {
      v.require(p.law_holds && p.exponent_stable, label + " law");
      v.require(p.group_exponents == c.group_exponents, label + " group exponents");
      v.require(p.exponent == table_exponent(c.f, c.m), label + " exponent");
      v.require(p.avg_outer_candidates == static_cast<double>(ipow(static_cast<std::uint64_t>(p.q), c.exponent)),
                label + " outer count");
      v.require(p.k_prime_min == predict_rank(c.f, c.m).total && p.k_prime_max == p.k_prime_min, label + " K'");
      if (c.f.family == Family::kHermBasis && c.m == 2) outer_h42 << (outer_h42.tellp() > 0 ? "," : "") << p.avg_outer_candidates;
    }
  }
  v.detail << "exponents 1,1/group,1,4 confirmed over q in {2,4,8}; herm N=4 M=2 outer {" << outer_h42.str()
           << "}; decode-law violations " << decode_law_violations;
  return v;
}

Verdict structural_invariants() {
  Verdict v;
  const std::vector<WeightSet> codes = {hermitian_basis_code(2),    hermitian_basis_code(3), hermitian_basis_code(4),
                                        hermitian_basis_code(8),    hermitian_basis_code(5, HermFlavor::kStandard),
                                        fgd_ren_code(),             block_diagonal_g2_code(2),
                                        block_diagonal_g2_code(3),  block_diagonal_g2_code(4),
                                        ryggz_basis_set(2, 6),      ryggz_basis_set(4, 8)};
  double worst_hr = 0.0;
  for (const auto& w : codes) {
    const ValidationReport r = validate_weight_set(w);
    v.require(r.passed, w.name() + " validation");
    worst_hr = std::max(worst_hr, r.max_cross_group_residual);
  }
  v.require(worst_hr < kHurwitzRadonTolerance, "HR residual");

  RandomSource rng(606);
  double worst_orth = 0.0;
  const std::vector<std::pair<WeightSet, std::size_t>> multigroup = {
      {fgd_ren_code(), 3}, {block_diagonal_g2_code(3), 2}, {block_diagonal_g2_code(2), 1}};
  for (const auto& [w, m] : multigroup)
    for (int trial = 0; trial < 100; ++trial)
      worst_orth = std::max(worst_orth, group_orthogonality(build_equiv_channel(w, sample_channel(w.n(), m, rng))));
  v.require(worst_orth < kGroupOrthogonalityTolerance, "group orthogonality");

  std::size_t changes = 0;
  const std::vector<std::pair<WeightSet, std::size_t>> singular = {{hermitian_basis_code(3), 2},
                                                                   {fgd_ren_code(), 3},
                                                                   {block_diagonal_g2_code(3), 2},
                                                                   {ryggz_basis_set(4, 8), 3}};
  for (int trial = 0; trial < 100; ++trial) {
    const auto& [w, m] = singular[static_cast<std::size_t>(trial) % singular.size()];
    const ComplexMatrix h = sample_channel(w.n(), m, rng);
    const std::size_t base = numerical_rank(build_equiv_channel(w, h).g);
    RealMatrix mix(w.k(), w.k());
    for (std::size_t j = 0; j < w.k(); ++j)
      for (std::size_t i = 0; i < w.k(); ++i) mix(i, j) = rng.normal() + (i == j ? 3.0 * w.k() : 0.0);
    ComplexMatrix c(w.t(), w.t());
    for (std::size_t j = 0; j < w.t(); ++j)
      for (std::size_t i = 0; i < w.t(); ++i) c(i, j) = Complex(rng.normal(), rng.normal()) + (i == j ? 3.0 * w.t() : 0.0);
    if (numerical_rank(build_equiv_channel(recombined(w, mix), h).g) != base) ++changes;
    if (numerical_rank(build_equiv_channel(left_multiplied(w, c), h).g) != base) ++changes;
  }
  v.require(changes == 0, "invariance suites");
  v.detail << codes.size() << " codes valid, max HR residual " << worst_hr << ", max group correlation " << worst_orth
           << ", rank changes under recombination/left multiplication " << changes << "/200";
  return v;
}

}  // namespace

int main() {
  std::size_t law_violations = 0;
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"AC1 Hermitian-basis rank law", hermitian_rank_law},
      {"AC2 fast-group-decodable code example", fgd_example},
      {"AC3 block-diagonal two-group code example", block_diagonal_example},
      {"AC4 unbalanced two-group rank formula", unbalanced_rank_formula},
      {"AC5 kernel-dimension suite", kernel_suite},
      {"AC6 decoder oracle equivalence", [&] { return decoder_equivalence(law_violations); }},
      {"AC7 complexity law", [&] { return complexity_law(law_violations); }},
      {"AC8 structural invariants", structural_invariants},
  };
  std::size_t passed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << name << ": " << v.detail.str() << " (" << std::fixed
              << std::setprecision(1) << secs << " s)" << std::endl;
    passed += v.pass ? 1 : 0;
  }
  std::cout << passed << "/" << criteria.size() << " acceptance criteria passed" << std::endl;
  return passed == criteria.size() ? 0 : 1;
}
