#include "tqsl/harness/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <thread>

#include "tqsl/bounds.hpp"
#include "tqsl/evolution.hpp"

namespace tqsl::harness {

namespace {

constexpr double kExactThreshold = 1e-12;
constexpr double kTightMaxAbsExponent = 0.1;
constexpr double kLooseMinExponent = 0.4;

const char* kind_name(models::PerturbationKind kind) {
  switch (kind) {
    case models::PerturbationKind::local_sigma_x:
      return "local";
    case models::PerturbationKind::mode_shift:
      return "mode-shift";
    case models::PerturbationKind::trivial:
      return "trivial";
  }
  throw std::invalid_argument("unknown perturbation kind");
}

double resolved_strength(models::PerturbationKind kind, double strength) {
  if (!std::isnan(strength)) {
    if (!std::isfinite(strength) || strength < 0.0)
      throw std::invalid_argument("perturbation strength must be finite and >= 0");
    return strength;
  }
  switch (kind) {
    case models::PerturbationKind::local_sigma_x:
      return models::kDefaultEpsilon;
    case models::PerturbationKind::mode_shift:
      return models::kDefaultDeltaOmega;
    case models::PerturbationKind::trivial:
      return 0.0;
  }
  throw std::invalid_argument("unknown perturbation kind");
}

// 2 * cutoff^n, saturating just past `cap` to avoid overflow.
long long spin_boson_dim(int n, int cutoff, int cap) {
  long long dim = 2;
  for (int k = 0; k < n; ++k) {
    dim *= cutoff;
    if (dim > cap) return static_cast<long long>(cap) + 1;
  }
  return dim;
}

SweepRow run_one_size(const SweepSpec& spec, int n) {
  SweepRow row;
  row.n = n;
  row.dim = static_cast<int>(spin_boson_dim(n, spec.cutoff, spec.dim_cap));

  const models::SpinBosonParams params = models::sampled_spin_boson_params(
      n, spec.cutoff, spec.seed, spec.omega_spin, {spec.omega_min, spec.omega_max},
      {spec.g_min, spec.g_max});
  const HermitianOperator h0 = models::build_spin_boson(params, spec.dim_cap);
  const double strength = resolved_strength(spec.kind, spec.strength);
  const HermitianOperator v =
      models::spin_boson_perturbation(params, spec.kind, strength, spec.dim_cap);

  const ThermalContext ctx = thermal_state(h0, spec.beta);

  BoundReportOptions options;
  options.model_id = std::string("spin-boson/") + kind_name(spec.kind);
  options.parameters = {{"n_modes", static_cast<double>(n)},
                        {"cutoff", static_cast<double>(spec.cutoff)},
                        {"omega_spin", spec.omega_spin},
                        {"strength", strength},
                        {"beta", spec.beta},
                        {"t_star", spec.t_star}};
  options.seed = spec.seed;

  const BoundReport report =
      bound_report(ctx, DriveSchedule::constant(v), {spec.t_star}, options);

  row.actual = report.actual_trace_distance[0];
  row.tqsl = report.tqsl_trace.raw[0];
  row.tqsl_bures = report.tqsl_bures.raw[0];
  row.mt = report.mt.raw[0];
  row.ml = report.ml.raw[0];
  row.mds_orig = report.mds_original_trace.raw[0];
  row.mds_simpl = report.mds_simplified.raw[0];
  row.ok = true;
  return row;
}

ColumnSummary summarize_column(const std::string& name, const std::vector<double>& sizes,
                               const std::vector<double>& values) {
  ColumnSummary summary;
  summary.name = name;

  bool all_tiny = true;
  bool any_nonpositive = false;
  for (double v : values) {
    if (std::abs(v) >= kExactThreshold) all_tiny = false;
    if (!(v > 0.0)) any_nonpositive = true;
  }
  if (all_tiny) {
    summary.classification = Classification::exact;
    return summary;
  }
  if (any_nonpositive) {
    // Mixes zeros (or negatives, which bounds never produce) with finite
    // values: no log-log fit is possible.
    summary.classification = Classification::indeterminate;
    return summary;
  }

  const FitResult fit = fit_exponent(sizes, values);
  summary.fit = fit;
  if (std::abs(fit.exponent) <= kTightMaxAbsExponent)
    summary.classification = Classification::tight;
  else if (fit.exponent >= kLooseMinExponent)
    summary.classification = Classification::loose;
  else
    summary.classification = Classification::indeterminate;
  return summary;
}

}  // namespace

FitResult fit_exponent(const std::vector<double>& sizes, const std::vector<double>& values) {
  if (sizes.size() != values.size())
    throw std::invalid_argument("fit_exponent: sizes and values must have equal length");
  const std::size_t n = sizes.size();
  if (n < 3)
    throw std::invalid_argument("fit_exponent: need at least 3 points for a slope with error");
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(sizes[i] > 0.0))
      throw std::invalid_argument("fit_exponent: sizes must be positive");
    if (!(values[i] > 0.0))
      throw std::domain_error("fit_exponent: values must be positive (log-log fit)");
    xs[i] = std::log(sizes[i]);
    ys[i] = std::log(values[i]);
  }
  double xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= static_cast<double>(n);
  ybar /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_exponent: sizes must not be all equal");

  FitResult fit;
  fit.exponent = sxy / sxx;
  const double intercept = ybar - fit.exponent * xbar;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (intercept + fit.exponent * xs[i]);
    ss_res += r * r;
  }
  fit.stderr_ = std::sqrt(ss_res / static_cast<double>(n - 2) / sxx);
  return fit;
}

std::string classification_name(Classification c) {
  switch (c) {
    case Classification::exact:
      return "exact";
    case Classification::tight:
      return "tight";
    case Classification::loose:
      return "loose";
    case Classification::indeterminate:
      return "indeterminate";
  }
  throw std::invalid_argument("unknown classification");
}

ScalingResult run_sweep(const SweepSpec& spec) {
  if (spec.sizes.size() < 3)
    throw std::invalid_argument("run_sweep: need at least 3 sizes to fit exponents");
  for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
    if (spec.sizes[i] < 1) throw std::invalid_argument("run_sweep: sizes must be >= 1");
    if (i > 0 && spec.sizes[i] <= spec.sizes[i - 1])
      throw std::invalid_argument("run_sweep: sizes must be strictly ascending");
  }
  if (!(spec.t_star > 0.0))
    throw std::invalid_argument("run_sweep: t_star must be positive");
  if (spec.jobs < 1) throw std::invalid_argument("run_sweep: jobs must be >= 1");
  resolved_strength(spec.kind, spec.strength);  // validate up front

  ScalingResult result;
  result.spec = spec;
  result.rows.resize(spec.sizes.size());

  // Pre-mark sizes past the dimension cap; the sweep itself needs at least
  // three feasible sizes to say anything about scaling.
  std::vector<std::size_t> feasible;
  for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
    SweepRow& row = result.rows[i];
    row.n = spec.sizes[i];
    const long long dim = spin_boson_dim(spec.sizes[i], spec.cutoff, spec.dim_cap);
    row.dim = static_cast<int>(std::min<long long>(dim, spec.dim_cap));
    if (dim > spec.dim_cap) {
      row.ok = false;
      row.error = "dimension exceeds cap " + std::to_string(spec.dim_cap);
    } else {
      feasible.push_back(i);
    }
  }
  if (feasible.size() < 3)
    throw ResourceError("run_sweep: fewer than 3 sizes fit within dimension cap " +
                        std::to_string(spec.dim_cap));

  const unsigned n_workers =
      static_cast<unsigned>(std::min<std::size_t>(static_cast<std::size_t>(spec.jobs),
                                                  feasible.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= feasible.size()) return;
      const std::size_t i = feasible[k];
      try {
        result.rows[i] = run_one_size(spec, spec.sizes[i]);
      } catch (const std::exception& e) {
        result.rows[i].ok = false;
        result.rows[i].error = e.what();
      }
    }
  };
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  std::vector<double> ok_sizes;
  for (const SweepRow& row : result.rows)
    if (row.ok) ok_sizes.push_back(static_cast<double>(row.n));
  if (ok_sizes.size() < 3)
    throw std::runtime_error("run_sweep: fewer than 3 sizes completed successfully");

  const std::vector<std::pair<std::string, double SweepRow::*>> columns = {
      {"actual", &SweepRow::actual},       {"tqsl", &SweepRow::tqsl},
      {"tqsl_bures", &SweepRow::tqsl_bures}, {"mt", &SweepRow::mt},
      {"ml", &SweepRow::ml},               {"mds_orig", &SweepRow::mds_orig},
      {"mds_simpl", &SweepRow::mds_simpl}};
  for (const auto& [name, member] : columns) {
    std::vector<double> values;
    for (const SweepRow& row : result.rows)
      if (row.ok) values.push_back(row.*member);
    result.columns.push_back(summarize_column(name, ok_sizes, values));
  }
  return result;
}

models::PerturbationKind parse_perturbation_kind(const std::string& name) {
  if (name == "local") return models::PerturbationKind::local_sigma_x;
  if (name == "mode-shift") return models::PerturbationKind::mode_shift;
  if (name == "trivial") return models::PerturbationKind::trivial;
  throw ConfigError("unknown perturbation '" + name +
                    "' (expected local, mode-shift, or trivial)");
}

SweepSpec sweep_spec_from_config(const RunConfig& config) {
  if (config.n_min < 1 || config.n_max < config.n_min)
    throw ConfigError("sweep requires 1 <= n-min <= n-max");
  SweepSpec spec;
  for (int n = config.n_min; n <= config.n_max; ++n) spec.sizes.push_back(n);
  spec.kind = parse_perturbation_kind(config.perturbation);
  spec.strength = config.strength;
  spec.beta = config.beta;
  spec.t_star = config.t_star;
  spec.cutoff = config.cutoff;
  spec.omega_spin = config.omega_spin;
  spec.omega_min = config.omega_min;
  spec.omega_max = config.omega_max;
  spec.g_min = config.g_min;
  spec.g_max = config.g_max;
  spec.seed = config.seed;
  spec.jobs = config.jobs;
  spec.dim_cap = config.max_dim;
  return spec;
}

}  // namespace tqsl::harness
