#include "gflab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace gflab {

namespace {

[[noreturn]] void fail(const std::string& origin, std::size_t line,
                       const std::string& what) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double to_double(std::string_view s, const std::string& origin, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    fail(origin, line, "expected a number, got '" + std::string(s) + "'");
  return v;
}

long long to_int(std::string_view s, const std::string& origin, std::size_t line) {
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    fail(origin, line, "expected an integer, got '" + std::string(s) + "'");
  return v;
}

std::vector<double> to_double_list(std::string_view s, const std::string& origin,
                                   std::size_t line) {
  std::vector<double> out;
  std::size_t start = 0;
  const std::string str(s);
  while (start <= str.size()) {
    std::size_t pos = str.find(',', start);
    if (pos == std::string::npos) pos = str.size();
    const std::string_view item = trim(std::string_view(str).substr(start, pos - start));
    if (item.empty()) fail(origin, line, "empty list entry");
    out.push_back(to_double(item, origin, line));
    start = pos + 1;
  }
  return out;
}

}  // namespace

void ScenarioConfig::validate() const {
  auto bad = [](const std::string& what) {
    throw std::runtime_error("config: " + what);
  };
  if (grid_dim < 1 || grid_dim > 3) bad("grid.dim must be 1, 2 or 3");
  if (grid_size < 2) bad("grid.sizes must be >= 2");
  if (fiber_dim < 1 || fiber_dim > 8) bad("fiber.dim must be in [1, 8]");
  if (preset != "constant" && preset != "step" && preset != "rotating" &&
      preset != "smooth" && preset != "from-file")
    bad("preset.name must be constant, step, rotating, smooth or from-file");
  if (preset == "from-file" && preset_file.empty())
    bad("preset.file required for preset from-file");
  if ((preset == "step" || preset == "rotating" || preset == "smooth") && fiber_dim < 2)
    bad("preset '" + preset + "' needs fiber.dim >= 2");
  if (preset_rank < 0 || preset_rank > fiber_dim) bad("preset.rank out of range");
  if (preset == "smooth" && (preset_rank < 1 || preset_rank >= fiber_dim))
    bad("preset.rank must be in [1, fiber.dim-1] for preset smooth");
  if (!(preset_amplitude >= 0.0) || !std::isfinite(preset_amplitude))
    bad("preset.amplitude must be finite and >= 0");
  if (s_samples.empty()) bad("symmetry.s_samples must be nonempty");
  for (double s : s_samples)
    if (!std::isfinite(s)) bad("symmetry.s_samples must be finite");
  if (times.empty()) bad("evolution.times must be nonempty");
  for (double t : times)
    if (!(t >= 0.0) || !std::isfinite(t)) bad("evolution.times must be >= 0");
  if (trials < 1) bad("ensemble.trials must be >= 1");
  if (!(sim_time > 0.0) || !std::isfinite(sim_time)) bad("simulate.time must be > 0");
  if (sim_steps < 1) bad("simulate.steps must be >= 1");
  if (sim_equation != "heat" && sim_equation != "schrodinger")
    bad("simulate.equation must be heat or schrodinger");
  if (sim_initial != "random" && sim_initial != "plane-wave")
    bad("simulate.initial must be random or plane-wave");
  for (double t : {tol.algebraic, tol.ideal, tol.verdict_pass, tol.verdict_fail,
                   tol.locally_const, tol.support_floor})
    if (!(t > 0.0) || !std::isfinite(t)) bad("tolerances must be > 0");
  if (tol.verdict_pass >= tol.verdict_fail)
    bad("tol.verdict_pass must be below tol.verdict_fail");
}

ScenarioConfig parse_config_text(std::string_view text, const std::string& origin) {
  ScenarioConfig cfg;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++lineno;

    const std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (raw.empty()) continue;

    const std::size_t eq = raw.find('=');
    if (eq == std::string_view::npos) fail(origin, lineno, "expected 'key = value'");
    const std::string key(trim(raw.substr(0, eq)));
    const std::string_view value = trim(raw.substr(eq + 1));
    if (key.empty()) fail(origin, lineno, "empty key");
    if (value.empty()) fail(origin, lineno, "empty value for '" + key + "'");

    if (key == "grid.dim") cfg.grid_dim = static_cast<int>(to_int(value, origin, lineno));
    else if (key == "grid.sizes") {
      const std::vector<double> vals = to_double_list(value, origin, lineno);
      for (double v : vals)
        if (v != vals.front())
          fail(origin, lineno, "grid.sizes must be equal along all axes");
      cfg.grid_size = static_cast<int>(to_int(
          trim(std::string_view(value).substr(0, value.find(','))), origin, lineno));
    }
    else if (key == "fiber.dim") cfg.fiber_dim = static_cast<int>(to_int(value, origin, lineno));
    else if (key == "preset.name") cfg.preset = std::string(value);
    else if (key == "preset.rank") cfg.preset_rank = static_cast<int>(to_int(value, origin, lineno));
    else if (key == "preset.amplitude") cfg.preset_amplitude = to_double(value, origin, lineno);
    else if (key == "preset.file") cfg.preset_file = std::string(value);
    else if (key == "symmetry.s_samples") cfg.s_samples = to_double_list(value, origin, lineno);
    else if (key == "evolution.times") cfg.times = to_double_list(value, origin, lineno);
    else if (key == "ensemble.trials") cfg.trials = static_cast<int>(to_int(value, origin, lineno));
    else if (key == "seed") {
      const long long v = to_int(value, origin, lineno);
      if (v < 0) fail(origin, lineno, "seed must be >= 0");
      cfg.seed = static_cast<std::uint64_t>(v);
    }
    else if (key == "simulate.time") cfg.sim_time = to_double(value, origin, lineno);
    else if (key == "simulate.steps") cfg.sim_steps = static_cast<int>(to_int(value, origin, lineno));
    else if (key == "simulate.equation") cfg.sim_equation = std::string(value);
    else if (key == "simulate.initial") cfg.sim_initial = std::string(value);
    else if (key == "simulate.mode") cfg.sim_mode = static_cast<int>(to_int(value, origin, lineno));
    else if (key == "output.dir") cfg.out_dir = std::string(value);
    else if (key == "tol.algebraic") cfg.tol.algebraic = to_double(value, origin, lineno);
    else if (key == "tol.ideal") cfg.tol.ideal = to_double(value, origin, lineno);
    else if (key == "tol.verdict_pass") cfg.tol.verdict_pass = to_double(value, origin, lineno);
    else if (key == "tol.verdict_fail") cfg.tol.verdict_fail = to_double(value, origin, lineno);
    else if (key == "tol.locally_const") cfg.tol.locally_const = to_double(value, origin, lineno);
    else if (key == "tol.support_floor") cfg.tol.support_floor = to_double(value, origin, lineno);
    else fail(origin, lineno, "unknown config key '" + key + "'");
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config: " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), file.string());
}

}  // namespace gflab
