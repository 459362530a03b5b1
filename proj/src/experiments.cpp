#include "stbc/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stbc/decoder.hpp"
#include "stbc/equiv_channel.hpp"
#include "stbc/io.hpp"
#include "stbc/kernel_checks.hpp"
#include "stbc/random.hpp"

namespace stbc::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kDefaultRankTrials = 200;
constexpr std::size_t kDefaultAppendixTrials = 100;
constexpr std::size_t kDefaultDecodeTrials = 500;
constexpr std::size_t kDefaultScanTrials = 20;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// Writes to --out when given, otherwise to the caller's stream.
class Sink {
 public:
  Sink(const ExperimentConfig& config, std::ostream& fallback) : stream_(&fallback) {
    if (config.out_path) {
      file_.open(*config.out_path);
      if (!file_) throw UsageError("cannot open output file " + *config.out_path);
      stream_ = &file_;
    }
  }
  std::ostream& operator()() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void write_csv_preamble(std::ostream& os, const ExperimentConfig& config) {
  os << "# stbc-lab " << config.command << " schema=" << kCsvSchemaVersion << '\n';
  if (config.timestamp) os << "# generated_at=" << utc_timestamp() << '\n';
}

json json_envelope(const ExperimentConfig& config) {
  json j{{"schema", kCsvSchemaVersion}, {"command", config.command}, {"seed", config.seed}};
  if (config.timestamp) j["generated_at"] = utc_timestamp();
  return j;
}

std::size_t trials_or(const ExperimentConfig& config, std::size_t fallback) {
  return config.trials == 0 ? fallback : config.trials;
}

std::optional<FamilyParams> family_params(const ExperimentConfig& config) {
  if (!config.family) return std::nullopt;
  try {
    return FamilyParams{parse_family(*config.family), config.n, config.t};
  } catch (const CodeError& e) {
    throw UsageError(e.what());
  }
}

std::string code_label(const ExperimentConfig& config, const WeightSet& w) {
  return config.family ? *config.family : w.name();
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (v > std::numeric_limits<std::uint64_t>::max() / base) return std::nullopt;
    v *= base;
  }
  return v;
}

ComplexMatrix pattern_channel(const ExperimentConfig& config, const WeightSet& w) {
  if (config.h_fixture) {
    ComplexMatrix h = [&] {
      try {
        return load_channel_fixture(*config.h_fixture);
      } catch (const CodeError& e) {
        throw UsageError(e.what());
      }
    }();
    if (h.rows() != w.n()) throw UsageError("fixture H must have N = " + std::to_string(w.n()) + " rows");
    return h;
  }
  RandomSource rng = RandomSource(config.seed).child(0);
  return sample_channel(w.n(), config.m, rng);
}

}  // namespace

std::size_t RPattern::zero_trailing_rows() const {
  std::size_t count = 0;
  for (std::size_t r = rows; r-- > 0;) {
    bool any = false;
    for (std::size_t c = 0; c < cols; ++c) any = any || at(r, c);
    if (any) break;
    ++count;
  }
  return count;
}

std::string RPattern::render() const {
  std::string s;
  s.reserve(rows * (2 * cols + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c) s += ' ';
      s += at(r, c) ? 'a' : '0';
    }
    s += '\n';
  }
  return s;
}

RPattern r_pattern(const RealMatrix& r, double rel_threshold) {
  RPattern p;
  p.rows = r.rows();
  p.cols = r.cols();
  p.mask.assign(p.rows * p.cols, false);
  const double cut = rel_threshold * max_abs(r);
  for (std::size_t i = 0; i < p.rows; ++i)
    for (std::size_t j = 0; j < p.cols; ++j) p.mask[i * p.cols + j] = std::abs(r(i, j)) > cut;
  return p;
}

void validate(const ExperimentConfig& config) {
  const std::string& cmd = config.command;
  const bool needs_code = cmd != "appendix";
  if (needs_code) {
    if (config.family.has_value() == config.code_file.has_value()) {
      throw UsageError(cmd + ": give exactly one of --family or --code");
    }
    if (const auto params = family_params(config)) {
      const bool needs_n = params->family != Family::kFgdRen;
      if (needs_n && config.n == 0) throw UsageError(cmd + ": --n is required for " + *config.family);
      if (params->family == Family::kRyggzBasis && config.t == 0) {
        throw UsageError(cmd + ": --t is required for ryggz-basis");
      }
    }
  }
  if (cmd == "rank" || cmd == "decode" || cmd == "scan") {
    if (config.m == 0) throw UsageError(cmd + ": --m must be at least 1");
  }
  if (cmd == "rpattern" && !config.h_fixture && config.m == 0) {
    throw UsageError("rpattern: give --h-fixture or --m");
  }
  if (cmd == "appendix") {
    if (config.n == 0 || config.m == 0) throw UsageError("appendix: --n and --m must be at least 1");
    if (config.m >= config.n && !config.allow_full_rank) {
      throw UsageError("appendix: requires N > M (pass --allow-full-rank to check M >= N)");
    }
  }
  if (cmd == "decode" || cmd == "scan") {
    for (int q : config.q_list) {
      if (q < 2 || q % 2 != 0) throw UsageError(cmd + ": every q must be an even integer >= 2");
    }
    if (!std::isfinite(config.snr_db) && config.snr_db < 0) throw UsageError(cmd + ": --snr must not be -inf");
  }
  if (!(config.rank_tol > 0.0) || !(config.pattern_tol > 0.0)) throw UsageError("tolerances must be positive");
}

WeightSet resolve_code(const ExperimentConfig& config) {
  try {
    if (config.code_file) return weight_set_from_json(read_json_file(*config.code_file));
    return make_code(*family_params(config));
  } catch (const CodeError& e) {
    throw UsageError(e.what());
  }
}

int cmd_rank(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  validate(config);
  const WeightSet w = resolve_code(config);
  const auto params = family_params(config);
  std::optional<std::size_t> predicted;
  if (params) predicted = predict_rank(*params, config.m).total;
  const std::size_t trials = trials_or(config, kDefaultRankTrials);
  const RankStats stats = rank_monte_carlo(w, config.m, trials, RandomSource(config.seed), predicted, config.rank_tol);

  Sink sink(config, out);
  if (config.format == OutputFormat::kJson) {
    json j = json_envelope(config);
    json histogram = json::object();
    for (const auto& [rank, count] : stats.histogram) histogram[std::to_string(rank)] = count;
    j.update({{"code", code_label(config, w)},
              {"N", w.n()},
              {"T", w.t()},
              {"K", w.k()},
              {"M", config.m},
              {"trials", trials},
              {"predicted_rank", predicted ? json(*predicted) : json(nullptr)},
              {"histogram", histogram},
              {"match_fraction", stats.match_fraction}});
    sink() << j.dump(2) << '\n';
  } else {
    write_csv_preamble(sink(), config);
    sink() << kRankCsvHeader << '\n';
    write_rank_csv_row(sink(), code_label(config, w), w, config.m, stats);
  }
  if (predicted && stats.match_fraction < 1.0) {
    err << "rank: " << stats.histogram.size() << " distinct ranks observed, expected " << *predicted << '\n';
    return kExitMismatch;
  }
  return kExitOk;
}

int cmd_rpattern(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  validate(config);
  const WeightSet w = resolve_code(config);
  const ComplexMatrix h = pattern_channel(config, w);
  const EquivChannel ec = build_equiv_channel(w, h);
  const RPattern pattern = r_pattern(qr_decompose(ec.g, Pivoting::kNone).r, config.pattern_tol);
  const std::size_t rank = numerical_rank(ec.g, config.rank_tol);
  std::optional<std::size_t> predicted;
  if (const auto params = family_params(config)) predicted = predict_rank(*params, h.cols()).total;

  Sink sink(config, out);
  if (config.format == OutputFormat::kJson) {
    json rows = json::array();
    std::istringstream lines(pattern.render());
    for (std::string line; std::getline(lines, line);) rows.push_back(line);
    json j = json_envelope(config);
    j.update({{"code", code_label(config, w)},
              {"rows", pattern.rows},
              {"cols", pattern.cols},
              {"pattern", rows},
              {"rank", rank},
              {"predicted_rank", predicted ? json(*predicted) : json(nullptr)},
              {"zero_trailing_rows", pattern.zero_trailing_rows()}});
    sink() << j.dump(2) << '\n';
  } else {
    write_csv_preamble(sink(), config);
    sink() << "# code=" << code_label(config, w) << " rows=" << pattern.rows << " cols=" << pattern.cols << '\n';
    sink() << pattern.render();
    sink() << "rank: " << rank << '\n';
    sink() << "zero_trailing_rows: " << pattern.zero_trailing_rows() << '\n';
  }
  if (predicted && rank != *predicted) {
    err << "rpattern: rank " << rank << " differs from predicted " << *predicted << '\n';
    return kExitMismatch;
  }
  return kExitOk;
}

int cmd_appendix(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  validate(config);
  const std::size_t trials = trials_or(config, kDefaultAppendixTrials);
  const KernelCheckReport r = run_kernel_checks(config.n, config.m, trials, RandomSource(config.seed));

  Sink sink(config, out);
  if (config.format == OutputFormat::kJson) {
    json j = json_envelope(config);
    j.update({{"N", r.n},
              {"M", r.m},
              {"trials", r.trials},
              {"expected_nullity", r.expected_nullity},
              {"nullity_failures", r.nullity_failures},
              {"expected_left_null_dim", r.expected_left_null},
              {"left_null_failures", r.left_null_failures},
              {"expected_real_component_dim", r.expected_real_component},
              {"real_component_failures", r.real_component_failures},
              {"augmented_rank_failures", r.augmented_rank_failures}});
    sink() << j.dump(2) << '\n';
  } else {
    write_csv_preamble(sink(), config);
    sink() << "N,M,trials,expected_nullity,nullity_failures,expected_left_null_dim,left_null_failures,"
              "expected_real_component_dim,real_component_failures,augmented_rank_failures\n";
    sink() << r.n << ',' << r.m << ',' << r.trials << ',' << r.expected_nullity << ',' << r.nullity_failures << ','
           << r.expected_left_null << ',' << r.left_null_failures << ',' << r.expected_real_component << ','
           << r.real_component_failures << ',' << r.augmented_rank_failures << '\n';
  }
  if (r.total_failures() != 0) {
    err << "appendix: " << r.total_failures() << " failed checks\n";
    return kExitMismatch;
  }
  return kExitOk;
}

namespace {

struct DecodeSummary {
  int q = 0;
  std::size_t instances = 0;
  std::size_t k_prime_min = std::numeric_limits<std::size_t>::max();
  std::size_t k_prime_max = 0;
  double avg_outer = 0.0;
  std::optional<double> avg_group_outer;  // largest group's count, multigroup codes only
  double avg_nodes = 0.0;
  std::size_t rank_deficient_mismatches = 0;
  std::optional<std::size_t> multigroup_mismatches;
  std::size_t law_violations = 0;
};

bool outer_law_holds(const DecodeResult& res, const RealMatrix& block, int q, double rank_tol) {
  const auto expected = checked_pow(static_cast<std::uint64_t>(q), block.cols() - numerical_rank(block, rank_tol));
  return expected && res.outer_candidates == *expected;
}

bool same_decision(const DecodeResult& a, const DecodeResult& oracle) {
  return a.s_hat == oracle.s_hat && costs_agree(a.cost, oracle.cost);
}

DecodeSummary decode_suite(const ExperimentConfig& config, const WeightSet& w, int q, std::size_t instances) {
  const SignalSet sig(q);
  const RandomSource root(config.seed);
  const bool multigroup = w.num_groups() > 1;
  DecodeSummary s;
  s.q = q;
  s.instances = instances;
  if (multigroup) {
    s.avg_group_outer = 0.0;
    s.multigroup_mismatches = 0;
  }
  for (std::size_t i = 0; i < instances; ++i) {
    RandomSource rng = root.child(i);
    const ComplexMatrix h = sample_channel(w.n(), config.m, rng);
    const TransmissionInstance inst = simulate_transmission(w, sig, h, config.snr_db, rng);
    const EquivChannel ec = build_equiv_channel(w, h);
    const DecodeResult oracle = brute_force_ml(ec, sig, inst.y, config.budget);

    const DecodeResult rd = rank_deficient_decode(ec, sig, inst.y);
    if (!same_decision(rd, oracle)) ++s.rank_deficient_mismatches;
    if (!outer_law_holds(rd, ec.g, q, config.rank_tol)) ++s.law_violations;
    const std::size_t k_prime = numerical_rank(ec.g, config.rank_tol);
    s.k_prime_min = std::min(s.k_prime_min, k_prime);
    s.k_prime_max = std::max(s.k_prime_max, k_prime);
    s.avg_outer += static_cast<double>(rd.outer_candidates);
    s.avg_nodes += static_cast<double>(rd.nodes_visited);

    if (multigroup) {
      const DecodeResult mg = multigroup_decode(ec, sig, inst.y);
      if (!same_decision(mg, oracle)) ++*s.multigroup_mismatches;
      std::uint64_t largest = 0;
      for (std::size_t g = 0; g < mg.per_group.size(); ++g) {
        if (!outer_law_holds(mg.per_group[g], ec.group_blocks[g], q, config.rank_tol)) ++s.law_violations;
        largest = std::max(largest, mg.per_group[g].outer_candidates);
      }
      *s.avg_group_outer += static_cast<double>(largest);
    }
  }
  const auto n = static_cast<double>(instances);
  s.avg_outer /= n;
  s.avg_nodes /= n;
  if (s.avg_group_outer) *s.avg_group_outer /= n;
  return s;
}

}  // namespace

int cmd_decode(const ExperimentConfig& config_in, std::ostream& out, std::ostream& err) {
  ExperimentConfig config = config_in;
  if (config.q_list.empty()) config.q_list = {2};
  if (config.budget == 0) config.budget = kDefaultBruteForceBudget;
  validate(config);
  const WeightSet w = resolve_code(config);
  for (int q : config.q_list) {
    const auto space = checked_pow(static_cast<std::uint64_t>(q), w.k());
    if (!space || *space > config.budget) {
      throw UsageError("decode: q^K for q = " + std::to_string(q) + " exceeds the oracle budget " +
                       std::to_string(config.budget));
    }
  }
  const std::size_t instances = trials_or(config, kDefaultDecodeTrials);
  std::vector<DecodeSummary> rows;
  for (int q : config.q_list) rows.push_back(decode_suite(config, w, q, instances));

  Sink sink(config, out);
  const std::string label = code_label(config, w);
  if (config.format == OutputFormat::kJson) {
    json j = json_envelope(config);
    json points = json::array();
    for (const auto& s : rows) {
      points.push_back({{"q", s.q},
                        {"instances", s.instances},
                        {"K_prime_min", s.k_prime_min},
                        {"K_prime_max", s.k_prime_max},
                        {"avg_outer_candidates", s.avg_outer},
                        {"avg_group_outer_candidates", s.avg_group_outer ? json(*s.avg_group_outer) : json(nullptr)},
                        {"avg_nodes", s.avg_nodes},
                        {"rank_deficient_mismatches", s.rank_deficient_mismatches},
                        {"multigroup_mismatches",
                         s.multigroup_mismatches ? json(*s.multigroup_mismatches) : json(nullptr)},
                        {"law_violations", s.law_violations}});
    }
    j.update({{"code", label}, {"N", w.n()}, {"T", w.t()}, {"K", w.k()}, {"M", config.m},
              {"snr_db", config.snr_db}, {"points", points}});
    sink() << j.dump(2) << '\n';
  } else {
    write_csv_preamble(sink(), config);
    sink() << "code,N,T,K,M,q,instances,snr_db,K_prime_min,K_prime_max,avg_outer_candidates,"
              "avg_group_outer_candidates,avg_nodes,rank_deficient_mismatches,multigroup_mismatches,"
              "law_violations,seed\n";
    for (const auto& s : rows) {
      std::ostringstream row;
      row << label << ',' << w.n() << ',' << w.t() << ',' << w.k() << ',' << config.m << ',' << s.q << ','
          << s.instances << ',' << config.snr_db << ',' << s.k_prime_min << ',' << s.k_prime_max << ','
          << std::setprecision(12) << s.avg_outer << ',';
      if (s.avg_group_outer) row << *s.avg_group_outer;
      row << ',' << std::fixed << std::setprecision(2) << s.avg_nodes << ',' << s.rank_deficient_mismatches << ',';
      if (s.multigroup_mismatches) row << *s.multigroup_mismatches;
      row << ',' << s.law_violations << ',' << config.seed;
      sink() << row.str() << '\n';
    }
  }
  std::size_t failures = 0;
  for (const auto& s : rows) {
    failures += s.rank_deficient_mismatches + s.multigroup_mismatches.value_or(0) + s.law_violations;
  }
  if (failures != 0) {
    err << "decode: " << failures << " mismatches against the oracle or the outer-candidate law\n";
    return kExitMismatch;
  }
  return kExitOk;
}

int cmd_scan(const ExperimentConfig& config_in, std::ostream& out, std::ostream& err) {
  ExperimentConfig config = config_in;
  if (config.q_list.empty()) config.q_list = {2, 4, 8};
  validate(config);
  const WeightSet w = resolve_code(config);
  const auto params = family_params(config);
  const std::size_t trials = trials_or(config, kDefaultScanTrials);
  ScanReport report = complexity_scan(w, config.m, config.q_list, trials, RandomSource(config.seed), config.snr_db);
  report.code = code_label(config, w);

  std::optional<std::size_t> predicted_k_prime;
  std::optional<std::size_t> closed_form;
  if (params) {
    predicted_k_prime = predict_rank(*params, config.m).total;
    closed_form = table_exponent(*params, config.m);
  }

  Sink sink(config, out);
  if (config.format == OutputFormat::kJson) {
    json j = json_envelope(config);
    json points = json::array();
    for (const auto& p : report.points) {
      points.push_back({{"q", p.q},
                        {"trials", p.trials},
                        {"K_prime_min", p.k_prime_min},
                        {"K_prime_max", p.k_prime_max},
                        {"group_exponents", p.group_exponents},
                        {"exponent", p.exponent},
                        {"outer_candidates", p.avg_outer_candidates},
                        {"avg_nodes", p.avg_nodes},
                        {"exponent_stable", p.exponent_stable},
                        {"law_holds", p.law_holds}});
    }
    j.update({{"code", report.code}, {"N", report.n}, {"T", report.t}, {"K", report.k}, {"M", report.m},
              {"table_exponent", closed_form ? json(*closed_form) : json(nullptr)},
              {"predicted_K_prime", predicted_k_prime ? json(*predicted_k_prime) : json(nullptr)},
              {"points", points}});
    sink() << j.dump(2) << '\n';
  } else {
    write_csv_preamble(sink(), config);
    write_scan_csv(sink(), report, closed_form);
  }

  int status = kExitOk;
  for (const auto& p : report.points) {
    if (!p.law_holds || !p.exponent_stable) {
      err << "scan: q = " << p.q << " violates the outer-candidate law\n";
      status = kExitMismatch;
    }
    if (predicted_k_prime && (p.k_prime_min != *predicted_k_prime || p.k_prime_max != *predicted_k_prime)) {
      err << "scan: q = " << p.q << " measured K' in [" << p.k_prime_min << ", " << p.k_prime_max
          << "], predicted " << *predicted_k_prime << '\n';
      status = kExitMismatch;
    }
    if (closed_form && p.exponent != *closed_form) {
      err << "scan: q = " << p.q << " exponent " << p.exponent << " differs from closed form " << *closed_form
          << '\n';
      status = kExitMismatch;
    }
  }
  return status;
}

int cmd_export_code(const ExperimentConfig& config, std::ostream& out, std::ostream&) {
  validate(config);
  const WeightSet w = resolve_code(config);
  Sink sink(config, out);
  sink() << weight_set_to_json(w).dump(2) << '\n';
  return kExitOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank, pattern, decoding and complexity experiments for linear-dispersion space-time block codes",
               "stbc_lab"};
  app.require_subcommand(1);
  ExperimentConfig config;
  std::string format = "csv";
  bool no_timestamp = false;
  std::string snr_text = "20";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "Root seed");
    sub->add_option("--trials", config.trials, "Number of trials or instances");
    sub->add_option("--out", config.out_path, "Output path (stdout when absent)");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--no-timestamp", no_timestamp, "Omit the generated_at header line");
  };
  auto add_code = [&](CLI::App* sub) {
    sub->add_option("--family", config.family, "herm|fgd-ren|natarajan-g2|ryggz-basis")
        ->check(CLI::IsMember({"herm", "fgd-ren", "natarajan-g2", "ryggz-basis"}));
    sub->add_option("--n", config.n, "N (herm, ryggz-basis) or block size n (natarajan-g2)");
    sub->add_option("--t", config.t, "T (ryggz-basis)");
    sub->add_option("--code", config.code_file, "Weight-set JSON instead of a family");
    sub->add_option("--m", config.m, "Receive antennas M");
    sub->add_option("--rank-tol", config.rank_tol, "Relative rank tolerance");
  };
  auto add_decoding = [&](CLI::App* sub) {
    sub->add_option("--q", config.q_list, "PAM sizes, comma separated")->delimiter(',');
    sub->add_option("--snr", snr_text, "SNR in dB (inf for noiseless)");
  };

  auto* rank = app.add_subcommand("rank", "Monte Carlo rank of the equivalent channel");
  add_common(rank);
  add_code(rank);
  auto* rpattern = app.add_subcommand("rpattern", "Nonzero pattern of the unpivoted QR factor R");
  add_common(rpattern);
  add_code(rpattern);
  rpattern->add_option("--h-fixture", config.h_fixture, "Channel matrix JSON");
  rpattern->add_option("--pattern-tol", config.pattern_tol, "Relative pattern threshold");
  auto* appendix = app.add_subcommand("appendix", "Kernel-dimension checks on random channels");
  add_common(appendix);
  appendix->add_option("--n", config.n, "Transmit antennas N");
  appendix->add_option("--m", config.m, "Receive antennas M");
  appendix->add_flag("--allow-full-rank", config.allow_full_rank, "Accept M >= N");
  auto* decode = app.add_subcommand("decode", "Decoder equivalence against the brute-force oracle");
  add_common(decode);
  add_code(decode);
  add_decoding(decode);
  decode->add_option("--budget", config.budget, "Brute-force budget on q^K");
  auto* scan = app.add_subcommand("scan", "Sphere decoding complexity scan over q");
  add_common(scan);
  add_code(scan);
  add_decoding(scan);
  auto* export_code = app.add_subcommand("export-code", "Write a code's weight matrices as JSON");
  add_common(export_code);
  add_code(export_code);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  config.command = app.get_subcommands().front()->get_name();
  config.format = format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
  config.timestamp = !no_timestamp;
  if (snr_text == "inf" || snr_text == "+inf") {
    config.snr_db = std::numeric_limits<double>::infinity();
  } else {
    try {
      std::size_t used = 0;
      config.snr_db = std::stod(snr_text, &used);
      if (used != snr_text.size()) throw std::invalid_argument(snr_text);
    } catch (const std::exception&) {
      err << "invalid --snr value '" << snr_text << "'\n";
      return kExitUsage;
    }
  }

  try {
    if (config.command == "rank") return cmd_rank(config, out, err);
    if (config.command == "rpattern") return cmd_rpattern(config, out, err);
    if (config.command == "appendix") return cmd_appendix(config, out, err);
    if (config.command == "decode") return cmd_decode(config, out, err);
    if (config.command == "scan") return cmd_scan(config, out, err);
    return cmd_export_code(config, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DecodeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LinalgError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace stbc::cli
