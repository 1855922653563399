#pragma once

// Run configuration shared by the CLI subcommands.  Every field mirrors a
// command-line flag; flags can equally be supplied through a key-value config
// file (--config), where unknown keys are rejected.  The config schema is
// versioned: a file declaring a schema-version other than kSchemaVersion is
// refused instead of being reinterpreted silently.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "tqsl/errors.hpp"
#include "tqsl/models.hpp"
#include "tqsl/operators.hpp"

namespace tqsl::harness {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kLibraryVersion = "1.0.0";

using tqsl::ConfigError;    // exit code 2
using tqsl::ResourceError;  // exit code 3

struct RunConfig {
  // Shared flags.
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  std::vector<std::string> formats = {"csv", "json"};  // subset of csv,json,svg
  int max_dim = kDefaultDimCap;
  int jobs = 1;
  bool strict_health = false;  // escalate numerical-health warnings to errors
  int schema_version = kSchemaVersion;

  // Model selection (quench).
  std::string model = "qubit";         // qubit | spin-boson | impurity | spin-chain
  std::string perturbation = "local";  // local | mode-shift | trivial | nonlocal
  // NaN means "use the model's default strength for the chosen perturbation".
  double strength = std::numeric_limits<double>::quiet_NaN();
  double beta = 1.0;
  double t_max = 2.0;
  int t_points = 21;

  // Qubit model: H0 = qubit_omega * sigma^z, V = strength * sigma^x.
  double qubit_omega = 1.0;

  // Spin-boson model.
  int n_modes = 3;
  int cutoff = models::kDefaultCutoff;
  double omega_spin = models::kDefaultOmegaSpin;
  double omega_min = models::kDefaultOmegaMin;
  double omega_max = models::kDefaultOmegaMax;
  double g_min = models::kDefaultGMin;
  double g_max = models::kDefaultGMax;

  // Impurity model.
  int n_sites = 16;
  double hopping = 1.0;
  double force = 0.2;

  // Sweep subcommand: mode sizes n_min..n_max, bounds evaluated at t_star.
  int n_min = 1;
  int n_max = 5;
  double t_star = 0.1;

  // Verify subcommand.
  std::string suite = "all";
  bool inject_failure = false;
};

}  // namespace tqsl::harness
