#pragma once

#include <tqsl/operators.hpp>
#include <tqsl/types.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace tqsl::models {

// Default sweep parameters (artifact choices, in reference energy units).
// The small spin splitting keeps the mode sector dominant in <(H0+V)^2> so
// the energy-based bounds retain their extensive sqrt(N) growth at desk
// scale; the narrow omega/g bands keep seed-to-seed exponent noise low.
inline constexpr double kDefaultOmegaSpin = 0.02;
inline constexpr double kDefaultOmegaMin = 1.5;
inline constexpr double kDefaultOmegaMax = 1.7;
inline constexpr double kDefaultGMin = 0.15;
inline constexpr double kDefaultGMax = 0.25;
inline constexpr double kDefaultEpsilon = 0.05;     // local perturbation strength
inline constexpr double kDefaultDeltaOmega = 0.1;   // mode-shift strength
inline constexpr int kDefaultCutoff = 2;            // Fock levels per mode

// ---------------------------------------------------------------------------
// Spin-boson: H0 = Omega sigma^z + (1/sqrt(N)) sigma^x sum_k g_k(a_k^dag+a_k)
//                  + sum_k omega_k a_k^dag a_k
// on the composite space [2, c, ..., c] (spin first, N truncated modes).
// ---------------------------------------------------------------------------

struct SpinBosonParams {
  int n_modes;                // N
  int cutoff;                 // Fock levels per mode (occupations 0..c-1)
  double omega_spin;          // Omega
  std::vector<double> g;      // coupling per mode, length N
  std::vector<double> omega;  // mode energy per mode, length N
};

// Draws per-mode (omega_k, g_k) uniformly from the given ranges. Mode k's
// draw depends only on (seed, k), so params for N modes are a prefix of the
// params for N' > N modes at the same seed (sweeps grow a fixed system).
SpinBosonParams sampled_spin_boson_params(
    int n_modes, int cutoff, std::uint64_t seed, double omega_spin = kDefaultOmegaSpin,
    std::pair<double, double> omega_range = {kDefaultOmegaMin, kDefaultOmegaMax},
    std::pair<double, double> g_range = {kDefaultGMin, kDefaultGMax});

HermitianOperator build_spin_boson(const SpinBosonParams& p, int dim_cap = kDefaultDimCap);

// local_sigma_x: V = strength * sigma^x         (local: <V^2> independent of N)
// mode_shift:    V = strength * sum_k a_k^dag a_k  (finitely disturbing, not local)
// trivial:       V = 0, the strength-independent zero perturbation. Any
//                multiple of the identity would also leave the dynamics
//                trivial, but only the zero operator additionally zeroes the
//                V-quadratic bounds, so every certificate column vanishes
//                identically.
enum class PerturbationKind { local_sigma_x, mode_shift, trivial };

HermitianOperator spin_boson_perturbation(const SpinBosonParams& p, PerturbationKind kind,
                                          double strength, int dim_cap = kDefaultDimCap);

// Occupation conventions for the analytic formulas below: `ideal` uses
// Bose-Einstein occupations 1/(e^{beta omega} - 1); `truncated` uses the
// cutoff-truncated geometric occupations the numeric thermal state actually
// realizes.  Both evaluate the untruncated ladder identity
// <(a-a^dag)(a^dag-a)> = 1 + 2 n_bar, so either way the oracle carries a
// truncation artifact O(c e^{-beta omega (c-1)}) that vanishes exponentially
// with the cutoff; `truncated` removes the occupation part of the gap and
// converges a little faster.
enum class OccupationMode { truncated, ideal };

double bose_einstein_occupation(double beta, double omega);
double truncated_occupation(double beta, double omega, int cutoff);

// Closed-form quench bounds (clamped at 1):
//   local_sigma_x: sqrt(2 sqrt(2) strength Omega beta t), cutoff-independent
//   mode_shift:    sqrt(strength g_tilde beta t) * (2(1+2 n_tilde))^{1/4}
//                  with g_tilde^2 = sum g_k^2 / N and n_tilde the g^2-weighted
//                  mean occupation; occupations taken under the uncoupled
//                  (g = 0) Gibbs weights and the untruncated ladder identity
//   trivial:       0
double spin_boson_analytic_tqsl(const SpinBosonParams& p, PerturbationKind kind, double strength,
                                double beta, double t,
                                OccupationMode mode = OccupationMode::truncated);

// ---------------------------------------------------------------------------
// Mobile impurity on a hard-wall lattice: H0 = -J sum(|x><x+1| + h.c.) + 2J I
// (spectrum 2J(1 - cos(pi q/(L+1))) >= 0), V = F X with X = sum_x x |x><x|.
// ---------------------------------------------------------------------------

struct ImpurityLatticeParams {
  int n_sites;     // L, hard-wall box
  double hopping;  // J > 0; lattice mass m = 1/(2J), site spacing 1
  double force;    // F >= 0
};

inline double impurity_mass(const ImpurityLatticeParams& p) { return 1.0 / (2.0 * p.hopping); }

struct ImpurityOperators {
  HermitianOperator h0;
  HermitianOperator v;
  // P*P for the central-difference lattice momentum
  // P = -(i/2) sum_x (|x><x+1| - |x+1><x|), which satisfies
  // [H0, X] = -i P / m exactly on the open chain, so the closed-form bound
  // below and the numeric commutator bound agree to machine precision.
  HermitianOperator p2;
};

ImpurityOperators build_impurity(const ImpurityLatticeParams& p, int dim_cap = kDefaultDimCap);

// sqrt(beta t) * sqrt((F/m) sqrt(2 <P^2>_beta)) with <P^2>_beta evaluated
// numerically under thermal(H0, beta); clamped at 1.
double impurity_analytic_tqsl(const ImpurityLatticeParams& p, double beta, double t);

// ---------------------------------------------------------------------------
// Random spin chain: generic testbed separating "local" from "extensive"
// perturbations.
// ---------------------------------------------------------------------------

struct SpinChainParams {
  int n_sites;
  double j_min = -1.0;  // nearest-neighbor coupling range
  double j_max = 1.0;
  std::uint64_t seed = 0;
};

struct SpinChainOperators {
  HermitianOperator h0;          // random nearest-neighbor two-body terms
  HermitianOperator v_local;     // single-site operator on site 0
  HermitianOperator v_nonlocal;  // extensive sum of single-site operators
};

SpinChainOperators build_spin_chain(const SpinChainParams& p, int dim_cap = kDefaultDimCap);

}  // namespace tqsl::models
