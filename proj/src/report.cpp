#include "gflab/report.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace gflab {

CheckResult CheckResult::at_most(std::string name, double residual,
                                 double threshold, std::string detail) {
  CheckResult c;
  c.name = std::move(name);
  c.residual = residual;
  c.threshold = threshold;
  c.comparison = "<=";
  c.pass = residual <= threshold;
  c.detail = std::move(detail);
  return c;
}

CheckResult CheckResult::at_least(std::string name, double value,
                                  double threshold, std::string detail) {
  CheckResult c;
  c.name = std::move(name);
  c.residual = value;
  c.threshold = threshold;
  c.comparison = ">=";
  c.pass = value >= threshold;
  c.detail = std::move(detail);
  return c;
}

int RunReport::failed_count() const {
  int n = 0;
  for (const CheckResult& c : checks)
    if (!c.pass) ++n;
  return n;
}

nlohmann::ordered_json RunReport::to_json(bool with_timings) const {
  nlohmann::ordered_json j;
  j["scenario"] = scenario;
  j["config"] = config_echo;

  std::vector<CheckResult> sorted = checks;
  std::sort(sorted.begin(), sorted.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CheckResult& c : sorted) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["residual"] = c.residual;
    e["threshold"] = c.threshold;
    e["comparison"] = c.comparison;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["detail"] = c.detail;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);

  if (!convergence.empty()) {
    nlohmann::ordered_json tables;
    for (const auto& [name, rows] : convergence) {
      nlohmann::ordered_json t = nlohmann::ordered_json::array();
      for (const ConvergenceRow& r : rows)
        t.push_back({{"h", r.h}, {"error", r.error}, {"order", r.order}});
      tables[name] = std::move(t);
    }
    j["convergence"] = std::move(tables);
  }

  j["artifacts"] = artifacts;

  if (with_timings) {
    nlohmann::ordered_json t;
    for (const auto& [name, secs] : timings_s) t[name] = secs;
    j["timings"] = std::move(t);
  }
  return j;
}

void RunReport::write(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + file.string());
  out << to_json(true).dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + file.string());
}

int RunReport::exit_code(bool expect_failure) const {
  const bool any_failed = failed_count() > 0;
  if (expect_failure) return any_failed ? 0 : 1;
  return any_failed ? 1 : 0;
}

}  // namespace gflab
