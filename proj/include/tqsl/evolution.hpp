#pragma once

#include <tqsl/operators.hpp>
#include <tqsl/types.hpp>

#include <utility>
#include <vector>

namespace tqsl {

// Default midpoint-rule step cap for sampled ramps, in inverse-energy units.
inline constexpr double kDefaultDtMax = 1e-3;

// Time-dependent perturbation V_t as a declarative schedule. Three kinds:
//
//   constant   V_t = V for all t >= 0 (unbounded support)
//   piecewise  segments [(duration_k, V_k)]; V_k holds on [b_{k-1}, b_k)
//              with b_k the cumulative durations; support [0, sum durations]
//   sampled    grid 0 = t_0 < t_1 < ... < t_n with samples V_k held
//              left-constant on [t_k, t_{k+1}); support [0, t_n]
//
// Schedules always start at t = 0. Evaluating or evolving beyond end_time()
// is an error for the bounded kinds. Piecewise boundaries are modeled
// discontinuities (quenches); a sampled grid stands in for a smooth ramp, so
// its knots are not reported as hard discontinuities.
class DriveSchedule {
 public:
  enum class Kind { constant, piecewise, sampled };

  static DriveSchedule constant(HermitianOperator v);
  static DriveSchedule piecewise(std::vector<std::pair<double, HermitianOperator>> segments);
  static DriveSchedule sampled(std::vector<double> grid, std::vector<HermitianOperator> samples);

  Kind kind() const { return kind_; }
  int dim() const { return values_.front().dim(); }

  // Support end: +infinity for constant schedules.
  double end_time() const { return end_; }

  // Left-constant lookup, valid for t in [0, end_time()]; value(end_time())
  // is the final plateau's operator.
  const HermitianOperator& value(double t) const;

  // Interior jump times where D(t) is not differentiable (piecewise
  // boundaries; empty for constant and sampled kinds).
  std::vector<double> hard_discontinuities() const;

  // Staircase representation: plateau k starts at knots()[k] (knots()[0] = 0)
  // and carries values()[k]. Steppers and quadratures walk this directly.
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<HermitianOperator>& values() const { return values_; }

 private:
  DriveSchedule(Kind kind, std::vector<double> knots, std::vector<HermitianOperator> values,
                double end);

  Kind kind_;
  std::vector<double> knots_;
  std::vector<HermitianOperator> values_;
  double end_;
};

// States of one evolution experiment on a shared time grid.
// step_count counts applied step unitaries (exact legs once, midpoint legs
// once per step); max_unitarity_defect is the largest ||U^dagger U - I||_max
// observed and must stay below 1e-9 (enforced).
struct EvolutionResult {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  long step_count = 0;
  double max_unitarity_defect = 0.0;
};

// Conjugation transport: carries a set of same-dimension matrices through the
// exact same unitary path M -> U M U^dagger that the density-matrix evolution
// uses, recording snapshots at the requested times. This is how sqrt(rho0) is
// propagated "by the same unitaries" in the consistency checks.
struct TransportResult {
  std::vector<double> times;
  std::vector<std::vector<Matrix>> snapshots;  // snapshots[i][k]: matrix k at times[i]
  long step_count = 0;
  double max_unitarity_defect = 0.0;
};

TransportResult transport_conjugation(std::vector<Matrix> initial, const HermitianOperator& h0,
                                      const DriveSchedule& schedule,
                                      const std::vector<double>& times,
                                      double dt_max = kDefaultDtMax);

// rho_t = e^{-iHt} rho0 e^{+iHt} from one spectral decomposition of H,
// exact to eigensolver precision (no stepping error). times must be
// non-decreasing and >= 0; if times[0] == 0 the first state is rho0 unchanged.
EvolutionResult evolve_const(const DensityMatrix& rho0, const HermitianOperator& h,
                             const std::vector<double>& times);

// Driven evolution under H(t) = H0 + V_t. Constant schedules reduce to
// evolve_const on H0 + V; piecewise segments are evolved exactly per segment;
// sampled ramps use midpoint-rule steps U = exp(-i H(t_mid) dt) with
// dt <= dt_max (global error O(dt^2)).
EvolutionResult evolve_driven(const DensityMatrix& rho0, const HermitianOperator& h0,
                              const DriveSchedule& schedule, const std::vector<double>& times,
                              double dt_max = kDefaultDtMax);

// Transports sqrt(rho0) by the same unitaries as rho0 and returns
// ||(evolved sqrt(rho0))^2 - rho_t||_max. Contract: < 1e-8.
double sqrt_evolution_check(const DensityMatrix& rho0, const HermitianOperator& h0,
                            const DriveSchedule& schedule, double t,
                            double dt_max = kDefaultDtMax);

// Both sides of the D-measure derivative identity at time t:
//   lhs = central finite difference of D(rho0, rho_t) with stencil dt_fd
//   rhs = Re( i tr([sqrt(rho0), V_t] sqrt(rho_t)) )
// |lhs - rhs| = O(dt_fd^2). t must be interior to the schedule support and
// the stencil must not straddle a hard discontinuity.
struct DtDCheck {
  double lhs;
  double rhs;
};

DtDCheck dtD_identity_check(const DensityMatrix& rho0, const HermitianOperator& h0,
                            const DriveSchedule& schedule, double t, double dt_fd,
                            double dt_max = kDefaultDtMax);

}  // namespace tqsl
