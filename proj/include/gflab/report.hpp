#pragma once

// Run reports.  A report is a JSON document with the resolved config, a
// sorted list of named checks (residual, threshold, comparison direction,
// verdict), optional convergence tables and the artifact manifest.  Wall
// clock goes under a single "timings" key so byte-level comparisons can
// drop it while everything else stays reproducible.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace gflab {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  // "<=" means pass iff residual <= threshold; ">=" the opposite direction
  std::string comparison = "<=";
  bool pass = false;
  std::string detail;

  static CheckResult at_most(std::string name, double residual, double threshold,
                             std::string detail = {});
  static CheckResult at_least(std::string name, double value, double threshold,
                              std::string detail = {});
};

struct ConvergenceRow {
  double h = 0.0;
  double error = 0.0;
  double order = 0.0;  // log2(error(2h)/error(h)); 0 for the coarsest row
};

struct RunReport {
  std::string scenario;
  nlohmann::ordered_json config_echo;
  std::vector<CheckResult> checks;
  std::map<std::string, std::vector<ConvergenceRow>> convergence;
  std::vector<std::string> artifacts;
  std::map<std::string, double> timings_s;

  void add(CheckResult c) { checks.push_back(std::move(c)); }
  int failed_count() const;

  // with_timings=false yields the byte-comparable form
  nlohmann::ordered_json to_json(bool with_timings = true) const;
  void write(const std::filesystem::path& file) const;

  // 0 iff every check passes; under expect_failure the contract flips and
  // asserts that at least one check fails
  int exit_code(bool expect_failure) const;
};

}  // namespace gflab
