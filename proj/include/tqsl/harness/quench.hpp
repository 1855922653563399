#pragma once

// The quench experiment behind `tqsl quench`: build the configured model,
// prepare the thermal state, evolve under H0 + V, and evaluate every bound
// against the actual distances on a uniform time grid.

#include "tqsl/bounds.hpp"
#include "tqsl/harness/config.hpp"

namespace tqsl::harness {

struct QuenchSetup {
  HermitianOperator h0;
  HermitianOperator v;
  BoundReportOptions options;  // model id, echoed parameters, seed
};

// Builds (H0, V) for config.model / config.perturbation.  Throws ConfigError
// for unknown model or perturbation names, ResourceError past the cap.
QuenchSetup build_quench_setup(const RunConfig& config);

// Uniform grid: t_points points from 0 to t_max (a single point sits at
// t_max).  Throws ConfigError for t_points < 1 or t_max < 0.
std::vector<double> time_grid(double t_max, int t_points);

// Runs the experiment and returns the report; file emission is the CLI's job.
BoundReport run_quench(const RunConfig& config);

}  // namespace tqsl::harness
