#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "gflab/config.hpp"
#include "gflab/io.hpp"
#include "gflab/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"gflab: discrete projection-symmetry laboratory for vector-valued "
               "heat and Schrodinger flows on the periodic torus"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  std::string preset;
  long long seed = -1;
  bool expect_failure = false;
  app.add_option("--config", config_path, "flat key=value scenario config file");
  app.add_option("--out", out_dir, "output directory for report.json and CSV artifacts");
  app.add_option("--seed", seed, "override the config seed (>= 0)");
  app.add_option("--preset", preset,
                 "override the projection-field preset "
                 "(constant|step|rotating|smooth|from-file)");
  app.add_flag("--expect-failure", expect_failure,
               "invert the exit contract: succeed only if at least one check fails");

  for (const char* name : {"identities", "invariance", "gauge", "locality",
                           "irreducibility", "simulate"})
    app.add_subcommand(name);

  CLI11_PARSE(app, argc, argv);

  try {
    gflab::RunOptions opts;
    opts.scenario = app.get_subcommands().front()->get_name();
    opts.expect_failure = expect_failure;
    opts.config = config_path.empty() ? gflab::ScenarioConfig{}
                                      : gflab::load_config(config_path);
    if (seed >= 0) opts.config.seed = static_cast<std::uint64_t>(seed);
    if (!preset.empty()) opts.config.preset = preset;
    if (!out_dir.empty()) opts.config.out_dir = out_dir;
    opts.config.validate();

    const gflab::RunReport rep = gflab::run_scenario(opts);
    for (const gflab::CheckResult& c : rep.checks)
      std::printf("[%s] %s  %s %s %s\n", c.pass ? " ok " : "FAIL", c.name.c_str(),
                  gflab::io::format_number(c.residual).c_str(), c.comparison.c_str(),
                  gflab::io::format_number(c.threshold).c_str());
    std::printf("report: %s/report.json (%d of %zu checks failed)\n",
                opts.config.out_dir.c_str(), rep.failed_count(), rep.checks.size());
    return rep.exit_code(expect_failure);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
