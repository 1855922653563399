#include "tqsl/harness/quench.hpp"

#include <cmath>

#include "tqsl/evolution.hpp"
#include "tqsl/harness/sweep.hpp"

namespace tqsl::harness {

namespace {

double strength_or(double strength, double fallback) {
  if (std::isnan(strength)) return fallback;
  if (!std::isfinite(strength)) throw ConfigError("strength must be finite");
  return strength;
}

QuenchSetup qubit_setup(const RunConfig& config) {
  if (!std::isfinite(config.qubit_omega)) throw ConfigError("qubit-omega must be finite");
  const double eps = strength_or(config.strength, 1.0);
  QuenchSetup setup{HermitianOperator(config.qubit_omega * sigma_z()),
                    HermitianOperator(eps * sigma_x()),
                    {}};
  setup.options.model_id = "qubit";
  setup.options.parameters = {
      {"qubit_omega", config.qubit_omega}, {"strength", eps}, {"beta", config.beta}};
  return setup;
}

QuenchSetup spin_boson_setup(const RunConfig& config) {
  const models::PerturbationKind kind = parse_perturbation_kind(config.perturbation);
  double strength = 0.0;
  switch (kind) {
    case models::PerturbationKind::local_sigma_x:
      strength = strength_or(config.strength, models::kDefaultEpsilon);
      break;
    case models::PerturbationKind::mode_shift:
      strength = strength_or(config.strength, models::kDefaultDeltaOmega);
      break;
    case models::PerturbationKind::trivial:
      strength = 0.0;
      break;
  }
  const models::SpinBosonParams params = models::sampled_spin_boson_params(
      config.n_modes, config.cutoff, config.seed, config.omega_spin,
      {config.omega_min, config.omega_max}, {config.g_min, config.g_max});
  QuenchSetup setup{models::build_spin_boson(params, config.max_dim),
                    models::spin_boson_perturbation(params, kind, strength, config.max_dim),
                    {}};
  setup.options.model_id = std::string("spin-boson/") + config.perturbation;
  setup.options.parameters = {{"n_modes", static_cast<double>(config.n_modes)},
                              {"cutoff", static_cast<double>(config.cutoff)},
                              {"omega_spin", config.omega_spin},
                              {"strength", strength},
                              {"beta", config.beta}};
  return setup;
}

QuenchSetup impurity_setup(const RunConfig& config) {
  const models::ImpurityLatticeParams params{config.n_sites, config.hopping, config.force};
  models::ImpurityOperators ops = models::build_impurity(params, config.max_dim);
  QuenchSetup setup{std::move(ops.h0), std::move(ops.v), {}};
  setup.options.model_id = "impurity";
  setup.options.parameters = {{"n_sites", static_cast<double>(config.n_sites)},
                              {"hopping", config.hopping},
                              {"force", config.force},
                              {"beta", config.beta}};
  return setup;
}

QuenchSetup spin_chain_setup(const RunConfig& config) {
  models::SpinChainParams params;
  params.n_sites = config.n_sites;
  params.seed = config.seed;
  models::SpinChainOperators ops = models::build_spin_chain(params, config.max_dim);
  HermitianOperator v = [&]() {
    if (config.perturbation == "local") return std::move(ops.v_local);
    if (config.perturbation == "nonlocal") return std::move(ops.v_nonlocal);
    throw ConfigError("spin-chain perturbation must be local or nonlocal");
  }();
  const double scale = strength_or(config.strength, 1.0);
  if (scale != 1.0) v = HermitianOperator(scale * v.mat());
  QuenchSetup setup{std::move(ops.h0), std::move(v), {}};
  setup.options.model_id = std::string("spin-chain/") + config.perturbation;
  setup.options.parameters = {{"n_sites", static_cast<double>(config.n_sites)},
                              {"strength", scale},
                              {"beta", config.beta}};
  return setup;
}

}  // namespace

QuenchSetup build_quench_setup(const RunConfig& config) {
  QuenchSetup setup = [&]() {
    if (config.model == "qubit") return qubit_setup(config);
    if (config.model == "spin-boson") return spin_boson_setup(config);
    if (config.model == "impurity") return impurity_setup(config);
    if (config.model == "spin-chain") return spin_chain_setup(config);
    throw ConfigError("unknown model '" + config.model +
                      "' (expected qubit, spin-boson, impurity, or spin-chain)");
  }();
  setup.options.seed = config.seed;
  return setup;
}

std::vector<double> time_grid(double t_max, int t_points) {
  if (t_points < 1) throw ConfigError("t-points must be >= 1");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw ConfigError("t-max must be finite and >= 0");
  if (t_points == 1) return {t_max};
  std::vector<double> grid(static_cast<std::size_t>(t_points));
  for (int i = 0; i < t_points; ++i)
    grid[static_cast<std::size_t>(i)] =
        t_max * static_cast<double>(i) / static_cast<double>(t_points - 1);
  return grid;
}

BoundReport run_quench(const RunConfig& config) {
  const QuenchSetup setup = build_quench_setup(config);
  const ThermalContext ctx = thermal_state(setup.h0, config.beta);
  const std::vector<double> times = time_grid(config.t_max, config.t_points);
  return bound_report(ctx, DriveSchedule::constant(setup.v), times, setup.options);
}

}  // namespace tqsl::harness
