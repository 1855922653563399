#include "tqsl/harness/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tqsl/harness/config.hpp"
#include "tqsl/harness/quench.hpp"
#include "tqsl/harness/report_io.hpp"
#include "tqsl/harness/sweep.hpp"
#include "tqsl/harness/verify.hpp"
#include "tqsl/health.hpp"
#include "tqsl/kernels.hpp"

namespace tqsl::harness {

namespace {

bool wants(const RunConfig& config, const char* format) {
  return std::find(config.formats.begin(), config.formats.end(), format) !=
         config.formats.end();
}

void validate_common(const RunConfig& config) {
  if (config.schema_version != kSchemaVersion)
    throw ConfigError("unsupported schema-version " + std::to_string(config.schema_version) +
                      " (this build speaks " + std::to_string(kSchemaVersion) + ")");
  if (config.formats.empty()) throw ConfigError("--format needs at least one of csv,json,svg");
  for (const std::string& format : config.formats)
    if (format != "csv" && format != "json" && format != "svg")
      throw ConfigError("unknown format '" + format + "' (expected csv, json, or svg)");
  if (config.max_dim < 2) throw ConfigError("--max-dim must be >= 2");
  if (config.jobs < 1) throw ConfigError("--jobs must be >= 1");
}

void add_common_flags(CLI::App* cmd, RunConfig& config) {
  // Options the subcommand does not know (--config, --schema-version) climb
  // to the root app, which owns config-file processing.
  cmd->fallthrough(true);
  cmd->add_option("--seed", config.seed, "Deterministic RNG seed")->capture_default_str();
  cmd->add_option("--out-dir", config.out_dir, "Directory for emitted reports")
      ->capture_default_str();
  cmd->add_option("--format", config.formats, "Report formats, comma-separated (csv,json,svg)")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--max-dim", config.max_dim, "Dense Hilbert-space dimension cap")
      ->capture_default_str();
  cmd->add_option("--jobs", config.jobs, "Worker threads (sweep sizes run in parallel)")
      ->capture_default_str();
  cmd->add_flag("--strict-health", config.strict_health,
                "Treat numerical-health warnings as errors");
}

void add_model_flags(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--model", config.model, "qubit | spin-boson | impurity | spin-chain")
      ->capture_default_str();
  cmd->add_option("--perturbation", config.perturbation,
                  "local | mode-shift | trivial (spin-boson); local | nonlocal (spin-chain)")
      ->capture_default_str();
  cmd->add_option("--strength", config.strength,
                  "Perturbation strength (default: per-model convention)");
  cmd->add_option("--beta", config.beta, "Inverse temperature (>= 0)")->capture_default_str();
  cmd->add_option("--qubit-omega", config.qubit_omega, "Qubit splitting (H0 = omega sigma^z)")
      ->capture_default_str();
  cmd->add_option("--n-modes", config.n_modes, "Spin-boson bosonic mode count")
      ->capture_default_str();
  cmd->add_option("--cutoff", config.cutoff, "Fock levels per bosonic mode")
      ->capture_default_str();
  cmd->add_option("--omega-spin", config.omega_spin, "Spin-boson spin splitting")
      ->capture_default_str();
  cmd->add_option("--omega-min", config.omega_min, "Mode-energy sampling range, lower edge")
      ->capture_default_str();
  cmd->add_option("--omega-max", config.omega_max, "Mode-energy sampling range, upper edge")
      ->capture_default_str();
  cmd->add_option("--g-min", config.g_min, "Coupling sampling range, lower edge")
      ->capture_default_str();
  cmd->add_option("--g-max", config.g_max, "Coupling sampling range, upper edge")
      ->capture_default_str();
  cmd->add_option("--n-sites", config.n_sites, "Lattice / chain site count")
      ->capture_default_str();
  cmd->add_option("--hopping", config.hopping, "Impurity hopping amplitude J")
      ->capture_default_str();
  cmd->add_option("--force", config.force, "Impurity force magnitude F")->capture_default_str();
}

int escalate_health(const health::Collector& collector) {
  if (collector.messages().empty()) return 0;
  std::fprintf(stderr, "numerical-health warnings escalated to errors (--strict-health):\n");
  for (const std::string& message : collector.messages())
    std::fprintf(stderr, "  %s\n", message.c_str());
  return 1;
}

int do_quench(const RunConfig& config) {
  const BoundReport report = run_quench(config);
  if (wants(config, "csv")) write_file(config.out_dir, "quench.csv", quench_csv(report));
  if (wants(config, "json")) write_file(config.out_dir, "quench.json", quench_json(report));
  if (wants(config, "svg")) write_file(config.out_dir, "quench.svg", quench_svg(report));
  std::printf("quench: model=%s rows=%zu out-dir=%s\n", report.model_id.c_str(),
              report.times.size(), config.out_dir.c_str());
  return 0;
}

int do_sweep(const RunConfig& config) {
  const SweepSpec spec = sweep_spec_from_config(config);
  const ScalingResult result = run_sweep(spec);
  if (wants(config, "csv")) write_file(config.out_dir, "sweep.csv", sweep_csv(result));
  if (wants(config, "json")) write_file(config.out_dir, "sweep.json", sweep_json(result));
  if (wants(config, "svg")) write_file(config.out_dir, "sweep.svg", sweep_svg(result));
  for (const ColumnSummary& column : result.columns) {
    if (column.fit)
      std::printf("sweep: %-10s exponent=%+.4f stderr=%.4f classification=%s\n",
                  column.name.c_str(), column.fit->exponent, column.fit->stderr_,
                  classification_name(column.classification).c_str());
    else
      std::printf("sweep: %-10s classification=%s\n", column.name.c_str(),
                  classification_name(column.classification).c_str());
  }
  int failed_rows = 0;
  for (const SweepRow& row : result.rows)
    if (!row.ok) {
      ++failed_rows;
      std::fprintf(stderr, "sweep: size %d failed: %s\n", row.n, row.error.c_str());
    }
  std::printf("sweep: %zu sizes (%d failed) out-dir=%s\n", result.rows.size(), failed_rows,
              config.out_dir.c_str());
  return 0;
}

int do_verify(const RunConfig& config) {
  VerifyOptions options;
  options.seed = config.seed;
  options.suite = config.suite;
  options.inject_failure = config.inject_failure;
  const VerifyReport report = run_verify(options);
  if (wants(config, "json")) write_file(config.out_dir, "verify.json", verify_json(report));
  for (const SuiteResult& suite : report.suites) {
    std::printf("verify: %-22s cases=%-6ld failures=%-4ld worst_slack=%.3e\n",
                suite.suite.c_str(), suite.cases, suite.failures, suite.worst_slack);
    for (const std::string& message : suite.messages)
      std::fprintf(stderr, "verify: %s\n", message.c_str());
  }
  std::printf("verify: %s\n", report.passed ? "PASS" : "FAIL");
  return report.passed ? 0 : 1;
}

int do_models_list() {
  std::printf("qubit       two-level system: H0 = omega sigma^z, V = strength sigma^x\n");
  std::printf("spin-boson  spin coupled to N truncated bosonic modes; perturbations: "
              "local, mode-shift, trivial\n");
  std::printf("impurity    mobile impurity on a hard-wall lattice: H0 = hopping chain, "
              "V = F X\n");
  std::printf("spin-chain  random nearest-neighbor spin chain; perturbations: local, "
              "nonlocal\n");
  std::printf("kernels     %s\n", kernels::backend_name(kernels::active_backend()).c_str());
  return 0;
}

}  // namespace

int cli_run(int argc, const char* const* argv) {
  RunConfig config;

  CLI::App app{"thermal quantum speed limits: certified bounds, sweeps, verification"};
  app.require_subcommand(1);
  // Config file: top-level keys address these root options; subcommand flags
  // live in a [quench] / [sweep] / [verify] section (or use dotted keys).
  // Unknown keys are rejected.
  app.set_config("--config", "", "Key-value config file; keys mirror the CLI flags");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.add_option("--schema-version", config.schema_version,
                 "Config schema version understood by this build")
      ->capture_default_str();

  CLI::App* quench_cmd =
      app.add_subcommand("quench", "Evolve a thermal state under H0 + V and certify bounds");
  add_common_flags(quench_cmd, config);
  add_model_flags(quench_cmd, config);
  quench_cmd->add_option("--t-max", config.t_max, "Largest time on the grid")
      ->capture_default_str();
  quench_cmd->add_option("--t-points", config.t_points, "Number of grid times (from 0)")
      ->capture_default_str();

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Fit bound scaling with spin-boson system size");
  add_common_flags(sweep_cmd, config);
  sweep_cmd->add_option("--perturbation", config.perturbation,
                        "local | mode-shift | trivial")
      ->capture_default_str();
  sweep_cmd->add_option("--strength", config.strength,
                        "Perturbation strength (default: per-kind convention)");
  sweep_cmd->add_option("--beta", config.beta, "Inverse temperature (>= 0)")
      ->capture_default_str();
  sweep_cmd->add_option("--t-star", config.t_star, "Evaluation time t*")->capture_default_str();
  sweep_cmd->add_option("--n-min", config.n_min, "Smallest mode count")->capture_default_str();
  sweep_cmd->add_option("--n-max", config.n_max, "Largest mode count")->capture_default_str();
  sweep_cmd->add_option("--cutoff", config.cutoff, "Fock levels per bosonic mode")
      ->capture_default_str();
  sweep_cmd->add_option("--omega-spin", config.omega_spin, "Spin splitting")
      ->capture_default_str();
  sweep_cmd->add_option("--omega-min", config.omega_min, "Mode-energy range, lower edge")
      ->capture_default_str();
  sweep_cmd->add_option("--omega-max", config.omega_max, "Mode-energy range, upper edge")
      ->capture_default_str();
  sweep_cmd->add_option("--g-min", config.g_min, "Coupling range, lower edge")
      ->capture_default_str();
  sweep_cmd->add_option("--g-max", config.g_max, "Coupling range, upper edge")
      ->capture_default_str();

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run the randomized inequality verification suites");
  add_common_flags(verify_cmd, config);
  verify_cmd->add_option("--suite", config.suite, "all or a single suite name")
      ->capture_default_str();
  verify_cmd->add_flag("--inject-failure", config.inject_failure,
                       "Self-test: negate one inequality to exercise the failure path");

  CLI::App* models_cmd = app.add_subcommand("models", "Model catalogue");
  CLI::App* models_list_cmd = models_cmd->add_subcommand("list", "List available models");
  models_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the parse diagnostic
    return 2;
  }

  try {
    validate_common(config);
    if (app.got_subcommand(models_cmd)) {
      (void)models_list_cmd;
      return do_models_list();
    }
    if (config.strict_health) {
      health::Collector collector;
      int rc = 0;
      if (app.got_subcommand(quench_cmd)) rc = do_quench(config);
      else if (app.got_subcommand(sweep_cmd)) rc = do_sweep(config);
      else if (app.got_subcommand(verify_cmd)) rc = do_verify(config);
      const int health_rc = escalate_health(collector);
      return rc != 0 ? rc : health_rc;
    }
    if (app.got_subcommand(quench_cmd)) return do_quench(config);
    if (app.got_subcommand(sweep_cmd)) return do_sweep(config);
    if (app.got_subcommand(verify_cmd)) return do_verify(config);
    return 2;  // unreachable with require_subcommand(1)
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const ResourceError& e) {
    std::fprintf(stderr, "resource-cap error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace tqsl::harness
