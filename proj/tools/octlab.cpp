#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "octlab/checks.hpp"

namespace {

using namespace octlab;

// exit-code contract: 0 pass, 1 falsified claim, 2 config/IO error, 3 resource bound
constexpr int kExitPass = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;

Scalar parse_delta(const std::string& s) {
  // exact rational strings only; decimal input is rejected
  return scalar_from_string(s);
}

void add_config_flags(CLI::App* cmd, RunConfig& cfg, std::string& sign_str,
                      std::string& field_str, std::vector<std::string>& delta_strs) {
  cmd->add_option("--n", cfg.n, "matrix order (1..8)")->default_val(2);
  cmd->add_option("--sign", sign_str, "plus|minus|both")->default_val("both");
  cmd->add_option("--field", field_str, "q or fp:<prime>")->default_val("q");
  cmd->add_option("--delta", delta_strs, "exact rationals p/q, comma separated")
      ->delimiter(',');
  cmd->add_option("--primes", cfg.primes, "modular certification primes")->delimiter(',');
  cmd->add_option("--seed", cfg.seed, "RNG seed (recorded in reports)");
  cmd->add_option("--trials", cfg.trials, "random trials for generation evidence");
  cmd->add_option("--tuples", cfg.tuples, "random tuples for formula checks");
  cmd->add_option("--cache-dir", cfg.cache_dir, "structure-constant cache directory");
  cmd->add_option("--out", cfg.out_path, "JSON report output path");
  cmd->add_flag("--exploratory-char3", cfg.exploratory_char3,
                "permit characteristic 3 (exploratory, no verified claims)");
  cmd->add_option("--workers", cfg.workers, "concurrent workers");
  cmd->add_option("--time-box-ms", cfg.time_box_ms, "budget for time-boxed items");
}

void finish_config(RunConfig& cfg, const std::string& sign_str, const std::string& field_str,
                   const std::vector<std::string>& delta_strs) {
  if (sign_str == "plus")
    cfg.sign = SignSelect::Plus;
  else if (sign_str == "minus")
    cfg.sign = SignSelect::Minus;
  else if (sign_str == "both")
    cfg.sign = SignSelect::Both;
  else
    fail(ErrorCode::BadInput, "bad --sign: " + sign_str);
  if (field_str == "q")
    cfg.field = {FieldKind::Rationals, 0, cfg.exploratory_char3};
  else if (field_str.rfind("fp:", 0) == 0)
    cfg.field = {FieldKind::PrimeField, std::stoull(field_str.substr(3)),
                 cfg.exploratory_char3};
  else
    fail(ErrorCode::BadInput, "bad --field: " + field_str);
  for (const auto& s : delta_strs) cfg.deltas.push_back(parse_delta(s));
  cfg.validate();
}

int run_report(const std::string& in_path) {
  std::ifstream in(in_path);
  if (!in) fail(ErrorCode::Io, "cannot read " + in_path);
  nlohmann::json j;
  in >> j;
  bool all = true;
  for (const auto& r : j.at("records")) {
    bool pass = r.at("verdict") == "pass";
    all = all && pass;
    std::cout << (pass ? "pass" : "FAIL") << "  " << r.at("id").get<std::string>()
              << "  computed=" << r.at("computed").get<std::string>() << "  ("
              << r.at("ms").get<std::int64_t>() << " ms)\n";
  }
  std::cout << (all ? "all checks passed" : "FALSIFIED: at least one check failed") << "\n";
  return all ? kExitPass : kExitFalsified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"octlab: exact laboratory for Hermitian and skew-Hermitian octonion matrix algebras"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string sign_str, field_str;
  std::vector<std::string> delta_strs;
  std::vector<std::string> check_names;
  std::string report_in;

  CLI::App* build = app.add_subcommand("build", "build algebras and write cache files");
  add_config_flags(build, cfg, sign_str, field_str, delta_strs);

  CLI::App* check = app.add_subcommand("check", "run verification checks and write a report");
  add_config_flags(check, cfg, sign_str, field_str, delta_strs);
  check->add_option("checks", check_names, "check names or full-suite")->required();

  CLI::App* report = app.add_subcommand("report", "pretty-print a JSON report");
  report->add_option("--in", report_in, "report path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (build->parsed()) {
      finish_config(cfg, sign_str, field_str, delta_strs);
      for (const auto& p : cmd_build(cfg)) std::cout << "wrote " << p << "\n";
      return kExitPass;
    }
    if (check->parsed()) {
      finish_config(cfg, sign_str, field_str, delta_strs);
      Report rep = cmd_check(cfg, check_names);
      for (const auto& r : rep.records) std::cout << record_line(r) << "\n";
      if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path);
        if (!out) fail(ErrorCode::Io, "cannot write " + cfg.out_path);
        out << rep.to_json() << "\n";
      }
      if (!rep.all_pass()) {
        for (const auto& r : rep.records)
          if (!r.pass) {
            std::cerr << "FALSIFIED: " << record_line(r) << "\n";
            break;
          }
        return kExitFalsified;
      }
      std::cout << "all checks passed\n";
      return kExitPass;
    }
    if (report->parsed()) return run_report(report_in);
  } catch (const octlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ResourceBound ? kExitResource : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
