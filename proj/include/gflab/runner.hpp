#pragma once

// Scenario orchestration: builds the configured grid and projection field,
// runs one named check suite, writes report.json (plus any CSV artifacts)
// into the output directory and returns the report.

#include <string>

#include "gflab/config.hpp"
#include "gflab/report.hpp"

namespace gflab {

struct RunOptions {
  // identities | invariance | gauge | locality | irreducibility | simulate
  std::string scenario;
  ScenarioConfig config;
  bool expect_failure = false;
};

RunReport run_scenario(const RunOptions& opts);

}  // namespace gflab
