#pragma once

// Scaling sweeps over spin-boson system size: evaluate every bound and the
// actual trace distance at a fixed time t* for N = sizes[0..], fit log(value)
// against log(N) by least squares, and classify each column's growth.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tqsl/harness/config.hpp"
#include "tqsl/models.hpp"

namespace tqsl::harness {

// Least-squares fit of ln(value) = exponent * ln(size) + const.
// stderr_ is the standard error of the exponent estimate
// (s^2 = sum r_i^2 / (n - 2), var = s^2 / sum (x - xbar)^2).
// Throws std::invalid_argument for fewer than 3 points or equal sizes,
// std::domain_error for nonpositive values (log undefined).
struct FitResult {
  double exponent = 0.0;
  double stderr_ = 0.0;
};
FitResult fit_exponent(const std::vector<double>& sizes, const std::vector<double>& values);

// exact:         every value in the column is below 1e-12 in magnitude
// tight:         fitted |exponent| <= 0.1  (bound tracks the actual distance)
// loose:         fitted exponent >= 0.4    (bound grows with system size)
// indeterminate: anything in between, or a column that mixes zeros with
//                positive values so no log-log fit is possible
enum class Classification { exact, tight, loose, indeterminate };
std::string classification_name(Classification c);

struct SweepSpec {
  std::vector<int> sizes;  // mode counts N, ascending
  models::PerturbationKind kind = models::PerturbationKind::local_sigma_x;
  // NaN -> default strength for the kind (epsilon / delta-omega; ignored for
  // the trivial perturbation).
  double strength = std::numeric_limits<double>::quiet_NaN();
  double beta = 1.0;
  double t_star = 0.1;
  int cutoff = models::kDefaultCutoff;
  double omega_spin = models::kDefaultOmegaSpin;
  double omega_min = models::kDefaultOmegaMin;
  double omega_max = models::kDefaultOmegaMax;
  double g_min = models::kDefaultGMin;
  double g_max = models::kDefaultGMax;
  std::uint64_t seed = 1;
  int jobs = 1;
  int dim_cap = kDefaultDimCap;
};

// One system size.  Bound values are pre-clamp magnitudes: the clamp to 1
// would flatten exactly the growth the sweep is trying to measure.
struct SweepRow {
  int n = 0;
  int dim = 0;
  bool ok = false;
  std::string error;  // set when this size failed; numeric fields then unset
  double actual = 0.0;
  double tqsl = 0.0;
  double tqsl_bures = 0.0;  // pre-clamp arcsin argument
  double mt = 0.0;
  double ml = 0.0;
  double mds_orig = 0.0;  // trace-distance form (capped at 1 out of domain)
  double mds_simpl = 0.0;
};

struct ColumnSummary {
  std::string name;
  std::optional<FitResult> fit;  // absent for exact / unfittable columns
  Classification classification = Classification::indeterminate;
};

struct ScalingResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;            // sorted by n, failed sizes included
  std::vector<ColumnSummary> columns;    // actual, tqsl, tqsl_bures, mt, ml,
                                         // mds_orig, mds_simpl
};

// Runs one sweep.  Sizes whose Hilbert-space dimension exceeds spec.dim_cap
// are recorded as failed rows; if fewer than 3 sizes are feasible the sweep
// throws ResourceError up front.  Per-size computation failures are recorded
// and the sweep continues; if fewer than 3 sizes succeed the fit is
// impossible and a std::runtime_error is thrown.  Rows are computed in
// parallel across spec.jobs threads; results are deterministic for a fixed
// spec (each row depends only on its own size and the seed).
ScalingResult run_sweep(const SweepSpec& spec);

// "local" | "mode-shift" | "trivial" -> kind; ConfigError otherwise.
models::PerturbationKind parse_perturbation_kind(const std::string& name);

// Derives the sweep spec for `tqsl sweep` from a run configuration
// (sizes n_min..n_max, perturbation kind parsed from config.perturbation).
SweepSpec sweep_spec_from_config(const RunConfig& config);

}  // namespace tqsl::harness
