#pragma once

// Flat key-value scenario configuration.  Lines look like
//   grid.sizes = 32
//   symmetry.s_samples = 0.785398,1.570796,3.141593
// with '#' comments.  Unknown keys are errors (typos should not silently
// fall back to defaults); every diagnostic carries the line number.

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "gflab/types.hpp"

namespace gflab {

struct ScenarioConfig {
  // grid.dim, grid.sizes (one value for all axes; h = 1/size on the unit torus)
  int grid_dim = 1;
  int grid_size = 32;

  // fiber.dim
  int fiber_dim = 2;

  // preset.name: constant | step | rotating | smooth | from-file
  std::string preset = "constant";
  int preset_rank = 1;              // preset.rank (constant, smooth)
  double preset_amplitude = 0.75;   // preset.amplitude (smooth)
  std::string preset_file;          // preset.file (from-file)

  // symmetry.s_samples
  std::vector<double> s_samples{std::numbers::pi / 4, std::numbers::pi / 2,
                                std::numbers::pi};
  // evolution.times
  std::vector<double> times{0.01, 0.1, 1.0};
  int trials = 20;                  // ensemble.trials
  std::uint64_t seed = 42;          // seed

  // simulate.*
  double sim_time = 0.1;
  int sim_steps = 10;
  std::string sim_equation = "heat";    // heat | schrodinger
  std::string sim_initial = "random";   // random | plane-wave
  int sim_mode = 1;                     // plane-wave mode along axis 0

  std::string out_dir = ".";            // output.dir

  Tolerances tol;   // tol.algebraic, tol.ideal, tol.verdict_pass,
                    // tol.verdict_fail, tol.locally_const, tol.support_floor

  void validate() const;  // throws with a message naming the offending field
};

ScenarioConfig parse_config_text(std::string_view text,
                                 const std::string& origin = "<config>");
ScenarioConfig load_config(const std::filesystem::path& file);

}  // namespace gflab
