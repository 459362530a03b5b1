#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stbc/codes.hpp"
#include "stbc/linalg.hpp"

namespace stbc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

inline constexpr int kCsvSchemaVersion = 1;
inline constexpr double kDefaultPatternThreshold = 1e-9;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { kCsv, kJson };

struct ExperimentConfig {
  std::string command;
  std::optional<std::string> family;  // family token
  std::size_t n = 0;
  std::size_t t = 0;
  std::optional<std::string> code_file;  // weight-set JSON instead of a family
  std::size_t m = 0;
  std::size_t trials = 0;
  std::vector<int> q_list;
  std::uint64_t seed = 1;
  std::optional<std::string> out_path;
  OutputFormat format = OutputFormat::kCsv;
  bool timestamp = true;
  std::optional<std::string> h_fixture;
  double snr_db = 20.0;
  std::uint64_t budget = 0;      // brute-force oracle budget
  bool allow_full_rank = false;  // appendix with M >= N
  double rank_tol = kDefaultRankTolerance;
  double pattern_tol = kDefaultPatternThreshold;
};

// Magnitude mask of an R factor: true where |r_ij| > tol * max|r|.
struct RPattern {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<bool> mask;  // row-major

  bool at(std::size_t r, std::size_t c) const { return mask[r * cols + c]; }
  std::size_t zero_trailing_rows() const;
  // One line per row, entries 'a' or '0' separated by spaces.
  std::string render() const;
};

RPattern r_pattern(const RealMatrix& r, double rel_threshold = kDefaultPatternThreshold);

// Throws UsageError when the config is outside the subcommand's domain.
void validate(const ExperimentConfig& config);

// The code selected by --family/--n/--t or --code.
WeightSet resolve_code(const ExperimentConfig& config);

int cmd_rank(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_rpattern(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_appendix(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_decode(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_scan(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_export_code(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

// Parses `args` (without the program name) and runs the subcommand.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stbc::cli
