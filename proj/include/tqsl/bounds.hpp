#pragma once

#include <tqsl/distances.hpp>
#include <tqsl/evolution.hpp>
#include <tqsl/operators.hpp>
#include <tqsl/types.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tqsl {

// Gibbs state rho0 = e^{-beta H0} / Z0 together with the spectral data every
// bound calculator reuses (eigenbasis, thermal populations, sqrt(rho0)).
struct ThermalContext {
  HermitianOperator h0;
  double beta;
  DensityMatrix rho0;
  double z0;  // unshifted partition function (may overflow for extreme beta*E)
  // Minimum eigenvalue of the post-quench H0+V; depends on V, so it is filled
  // on demand (ml_bound computes it when absent, bound_report caches it).
  std::optional<double> e_gs;
  // cached spectral data of H0 and derived quantities
  SpectralDecomposition h0_spec;
  RealVector weights;  // thermal populations, aligned with h0_spec order
  HermitianOperator sqrt_rho0;
};

// Builds the Gibbs state, numerically stabilized by shifting the spectrum
// (weights e^{-beta(E - E_min)} renormalized; the state is invariant under
// the shift). beta = 0 yields the maximally mixed state I/dim exactly.
ThermalContext thermal_state(const HermitianOperator& h0, double beta);

// ---------------------------------------------------------------------------
// Quench bounds. Each *_raw variant returns the pre-clamp magnitude (the
// scaling story even when the bound is vacuous); the plain variant clamps
// trace-distance bounds at 1 and Bures-angle bounds at pi/2.
// ---------------------------------------------------------------------------

// sqrt(beta t) * (-2<[H0,V]^2>_beta)^(1/4). The commutator average is
// computed as <C^dagger C> with C = [H0, V], which is nonnegative by
// construction.
double tqsl_quench_raw(const ThermalContext& ctx, const HermitianOperator& v, double t);
double tqsl_quench(const ThermalContext& ctx, const HermitianOperator& v, double t);

// General driving: sqrt(beta * integral_0^t dt' sqrt(-2<[H0,V_t']^2>_beta)).
// Piecewise-constant segments integrate exactly; sampled ramps use composite
// Simpson per plateau, refined until the relative change drops below
// quadrature_tol.
double tqsl_general_raw(const ThermalContext& ctx, const DriveSchedule& schedule, double t,
                        double quadrature_tol = 1e-8);
double tqsl_general(const ThermalContext& ctx, const DriveSchedule& schedule, double t,
                    double quadrature_tol = 1e-8);

// arcsin of the clamped trace-form argument, in [0, pi/2].
double tqsl_bures(const ThermalContext& ctx, const HermitianOperator& v, double t);
double tqsl_bures(const ThermalContext& ctx, const DriveSchedule& schedule, double t,
                  double quadrature_tol = 1e-8);

// Mandelstam-Tamm: min(1, DeltaE * t) with
// DeltaE = sqrt(<(H0+V)^2>_beta - <H0+V>_beta^2), evaluated in the centered
// form <(H - <H>)^2> so it is nonnegative by construction.
double mt_bound_raw(const ThermalContext& ctx, const HermitianOperator& v, double t);
double mt_bound(const ThermalContext& ctx, const HermitianOperator& v, double t);

// Margolus-Levitin: min(1, sqrt(2 Ebar t)) with
// Ebar = <H0+V>_beta - E_gs(H0+V) >= 0 (variational inequality; enforced
// within 1e-10).
double ml_bound_raw(const ThermalContext& ctx, const HermitianOperator& v, double t);
double ml_bound(const ThermalContext& ctx, const HermitianOperator& v, double t);

// Mondal-Datta-Sazim, original form. d_bound = 2 sin^2(t sqrt(I)/2) with
// I the Wigner-Yanase skew information of (rho0, V); valid while
// t sqrt(I)/2 <= pi/4 (domain_ok). Within the domain the trace-distance
// certificate is holevo_rhs(d_bound); outside it the bound is vacuous (1).
struct MdsOriginal {
  double d_bound;
  double trace_bound;
  bool domain_ok;
};

MdsOriginal mds_original(const ThermalContext& ctx, const HermitianOperator& v, double t);

// Mondal-Datta-Sazim, simplified form: min(1, t sqrt(2 <V^2>_beta)).
double mds_simplified_raw(const ThermalContext& ctx, const HermitianOperator& v, double t);
double mds_simplified(const ThermalContext& ctx, const HermitianOperator& v, double t);

// Scalar proof-chain function, stable form
//   f = e^{-beta(E+E')/4} * sinh(u)/u,  u = beta(E'-E)/4,
// with a 3-term series for sinh(u)/u when |beta(E-E')/2| < 1e-6. Symmetric in
// (E, E'); f(E, E, beta) = e^{-beta E/2}; satisfies
// f^2 <= e^{-beta E} + e^{-beta E'}.
double f_beta(double e, double eprime, double beta);

// ---------------------------------------------------------------------------
// Bound report: one evolution pass, all bounds and actual distances on a
// shared time grid.
// ---------------------------------------------------------------------------

struct BoundSeries {
  std::vector<double> clamped;  // certifying values (trace forms <= 1, Bures <= pi/2)
  std::vector<double> raw;      // pre-clamp magnitudes (for tqsl_bures: the arcsin argument)
};

struct BoundReportOptions {
  std::string model_id = "custom";
  std::map<std::string, double> parameters;
  std::uint64_t seed = 0;
};

struct BoundReport {
  std::vector<double> times;
  std::vector<double> actual_trace_distance;
  std::vector<double> actual_bures_angle;

  BoundSeries tqsl_trace;
  BoundSeries tqsl_bures;
  BoundSeries mt;
  BoundSeries ml;
  BoundSeries mds_original_trace;  // raw == clamped (the capped value is the bound itself)
  BoundSeries mds_simplified;
  std::vector<double> mds_d_bound;   // D-measure form of the original MDS bound
  std::vector<bool> mds_domain_ok;

  std::string model_id;
  std::map<std::string, double> parameters;
  std::uint64_t seed = 0;
};

// Quench reports only (constant schedules); throws std::invalid_argument for
// driven schedules. Enforces the certification invariant: every bound series
// dominates the corresponding actual series within 1e-9 at every time
// (std::runtime_error otherwise). Angle bounds are compared in the fidelity
// domain (cos(bound) <= fidelity + 1e-9, an equivalent ordering) because the
// angle itself carries a sqrt(eps) noise floor near zero.
BoundReport bound_report(const ThermalContext& ctx, const DriveSchedule& schedule,
                         const std::vector<double>& times,
                         const BoundReportOptions& options = {});

}  // namespace tqsl
