#ifndef OCTLAB_CHECKS_HPP
#define OCTLAB_CHECKS_HPP

#include <string>
#include <vector>

#include "octlab/deltader.hpp"
#include "octlab/forms.hpp"

namespace octlab {

enum class SignSelect { Plus, Minus, Both };

struct RunConfig {
  int n = 2;
  SignSelect sign = SignSelect::Both;
  FieldSpec field;
  std::vector<Scalar> deltas;               // defaults to the standard scan set
  std::vector<std::uint64_t> primes = {5, 7, 11, 13, 10007, 10009};
  std::uint64_t seed = 1729;
  int trials = 20;
  int tuples = 500;                         // randomized product-formula tuples
  std::string cache_dir;
  std::string out_path;
  bool exploratory_char3 = false;
  int workers = 1;
  std::int64_t time_box_ms = 300000;        // budget for time-boxed items

  void validate() const;                    // throws BadInput
  Field make_field() const;
  std::vector<Sign> signs() const;
};

struct CheckRecord {
  std::string id;
  std::string anchor;        // mathematical claim label, or "derived"
  std::string expected;      // empty when the value is only reported
  std::string computed;
  bool pass = true;
  std::string certification;
  std::int64_t ms = 0;
};

struct Report {
  std::string version = "1.0";
  RunConfig config;
  std::vector<CheckRecord> records;
  bool all_pass() const;
  std::string to_json() const;
};

/// Pretty one-line rendering used by the CLI.
std::string record_line(const CheckRecord& r);

// ---------------------------------------------------------------------------
// Structure-constant cache files (versioned, byte-reproducible).

std::string cache_file_name(int n, Sign sign, const FieldSpec& field);
void write_cache(const StructureAlgebra& a, int n, Sign sign, const std::string& path);
StructureAlgebra load_cache(const std::string& path);

/// Builds the algebras selected by the config and writes their cache files
/// into config.cache_dir. Returns the file paths.
std::vector<std::string> cmd_build(const RunConfig& config);

// ---------------------------------------------------------------------------

/// Check names accepted by cmd_check, in dependency order.
const std::vector<std::string>& all_check_names();

/// Runs the selected checks and assembles the report. Unknown names throw
/// BadInput; "full-suite" expands to every check.
Report cmd_check(const RunConfig& config, std::vector<std::string> checks);

}  // namespace octlab

#endif
