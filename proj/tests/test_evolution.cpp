#include "doctest.h"
#include "oracles.hpp"

#include <tqsl/evolution.hpp>
#include <tqsl/operators.hpp>
#include <tqsl/rng.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace {

using namespace tqsl;

DensityMatrix plus_state() {
  Matrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return DensityMatrix(m);
}

DensityMatrix thermal_qubit() {
  const double p0 = std::exp(-1.0) / (2.0 * std::cosh(1.0));
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = p0;
  m(1, 1) = 1.0 - p0;
  return DensityMatrix(m);
}

// linear ramp (t/T) * sigma_x held left-constant on a uniform grid
DriveSchedule ramp_schedule(double t_total, int n_samples) {
  std::vector<double> grid(n_samples);
  std::vector<HermitianOperator> samples;
  samples.reserve(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    grid[k] = t_total * k / (n_samples - 1.0);
    samples.emplace_back(Matrix(grid[k] / t_total * sigma_x()));
  }
  return DriveSchedule::sampled(std::move(grid), std::move(samples));
}

}  // namespace

TEST_CASE("evolve_const reproduces the qubit phase analytically") {
  const DensityMatrix rho0 = plus_state();
  const HermitianOperator h{sigma_z()};
  const std::vector<double> times{0.0, 0.3, 1.7};
  const EvolutionResult res = evolve_const(rho0, h, times);
  REQUIRE(res.states.size() == 3);
  CHECK(oracles::max_abs(res.states[0].mat() - rho0.mat()) == 0.0);
  for (std::size_t i = 1; i < times.size(); ++i) {
    // rho(t) off-diagonal = e^{-2it} / 2 for rho0 = |+><+| under sigma_z
    const cxd od = res.states[i].mat()(0, 1);
    CHECK(od.real() == doctest::Approx(0.5 * std::cos(2.0 * times[i])).epsilon(1e-13));
    CHECK(od.imag() == doctest::Approx(-0.5 * std::sin(2.0 * times[i])).epsilon(1e-13));
    CHECK(res.states[i].mat()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-13));
  }
  CHECK(res.step_count == 3);
  CHECK(res.max_unitarity_defect < 1e-9);
}

TEST_CASE("evolve_const matches a series-exponential oracle") {
  Rng rng(401);
  const HermitianOperator h = random_hermitian(4, rng);
  const DensityMatrix rho0 = random_density(4, 4, rng);
  const std::vector<double> times{0.4, 0.9};
  const EvolutionResult res = evolve_const(rho0, h, times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Matrix expect = oracles::propagate(rho0.mat(), h.mat(), times[i]);
    CHECK(oracles::max_abs(res.states[i].mat() - expect) <= 1e-12);
  }
  // composition: rho(0.9) = propagate(rho(0.4), 0.5)
  const Matrix composed = oracles::propagate(res.states[0].mat(), h.mat(), 0.5);
  CHECK(oracles::max_abs(res.states[1].mat() - composed) <= 1e-12);
}

TEST_CASE("evolve_const validates inputs") {
  const DensityMatrix rho0 = plus_state();
  CHECK_THROWS_AS(evolve_const(rho0, HermitianOperator(Matrix::Identity(3, 3)), {0.1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(evolve_const(rho0, HermitianOperator{sigma_z()}, {0.5, 0.2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(evolve_const(rho0, HermitianOperator{sigma_z()}, {-0.1}),
                  std::invalid_argument);
}

TEST_CASE("constant drive reduces to evolve_const bitwise") {
  const DensityMatrix rho0 = thermal_qubit();
  const HermitianOperator h0{sigma_z()};
  const HermitianOperator v{Matrix(0.3 * sigma_x())};
  const std::vector<double> times{0.0, 0.5, 1.25};
  const EvolutionResult driven =
      evolve_driven(rho0, h0, DriveSchedule::constant(v), times);
  const EvolutionResult direct =
      evolve_const(rho0, HermitianOperator(h0.mat() + v.mat()), times);
  REQUIRE(driven.states.size() == direct.states.size());
  for (std::size_t i = 0; i < times.size(); ++i)
    CHECK(oracles::max_abs(driven.states[i].mat() - direct.states[i].mat()) == 0.0);
}

TEST_CASE("piecewise segments evolve exactly") {
  const DensityMatrix rho0 = thermal_qubit();
  const HermitianOperator h0{sigma_z()};
  const HermitianOperator v1{Matrix(0.4 * sigma_x())};
  const HermitianOperator v2{Matrix(-0.2 * sigma_y())};
  const DriveSchedule sched = DriveSchedule::piecewise({{0.6, v1}, {0.9, v2}});
  CHECK(sched.end_time() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(sched.hard_discontinuities() == std::vector<double>{0.6});

  const EvolutionResult res = evolve_driven(rho0, h0, sched, {1.5});
  const Matrix leg1 = oracles::propagate(rho0.mat(), h0.mat() + v1.mat(), 0.6);
  const Matrix expect = oracles::propagate(leg1, h0.mat() + v2.mat(), 0.9);
  CHECK(oracles::max_abs(res.states[0].mat() - expect) <= 1e-12);
  CHECK(res.max_unitarity_defect < 1e-9);

  // interior snapshot inside segment 1
  const EvolutionResult mid = evolve_driven(rho0, h0, sched, {0.25});
  const Matrix expect_mid = oracles::propagate(rho0.mat(), h0.mat() + v1.mat(), 0.25);
  CHECK(oracles::max_abs(mid.states[0].mat() - expect_mid) <= 1e-12);
}

TEST_CASE("schedule staircase lookup is left-constant") {
  const HermitianOperator v1{Matrix(1.0 * sigma_x())};
  const HermitianOperator v2{Matrix(2.0 * sigma_x())};
  const DriveSchedule sched = DriveSchedule::piecewise({{1.0, v1}, {1.0, v2}});
  CHECK(oracles::max_abs(sched.value(0.0).mat() - v1.mat()) == 0.0);
  CHECK(oracles::max_abs(sched.value(0.999).mat() - v1.mat()) == 0.0);
  CHECK(oracles::max_abs(sched.value(1.0).mat() - v2.mat()) == 0.0);
  CHECK(oracles::max_abs(sched.value(2.0).mat() - v2.mat()) == 0.0);
  CHECK_THROWS_AS(sched.value(2.0 + 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(sched.value(-0.1), std::invalid_argument);

  const DriveSchedule one_leg = DriveSchedule::piecewise({{1.0, v1}});
  CHECK(one_leg.hard_discontinuities().empty());
  CHECK(DriveSchedule::constant(v1).hard_discontinuities().empty());
  CHECK(ramp_schedule(1.0, 11).hard_discontinuities().empty());
}

TEST_CASE("schedule construction validates its inputs") {
  const HermitianOperator v{sigma_x()};
  const HermitianOperator w{Matrix::Identity(3, 3)};
  CHECK_THROWS_AS(DriveSchedule::piecewise({}), std::invalid_argument);
  CHECK_THROWS_AS(DriveSchedule::piecewise({{0.0, v}}), std::invalid_argument);
  CHECK_THROWS_AS(DriveSchedule::piecewise({{1.0, v}, {1.0, w}}), std::invalid_argument);
  CHECK_THROWS_AS(DriveSchedule::sampled({0.0, 1.0}, {v}), std::invalid_argument);
  CHECK_THROWS_AS(DriveSchedule::sampled({0.5, 1.0}, {v, v}), std::invalid_argument);
  CHECK_THROWS_AS(DriveSchedule::sampled({0.0, 0.0}, {v, v}), std::invalid_argument);
}

TEST_CASE("evolution respects bounded schedule support") {
  const DensityMatrix rho0 = thermal_qubit();
  const HermitianOperator h0{sigma_z()};
  const DriveSchedule sched = ramp_schedule(1.0, 11);
  CHECK_THROWS_AS(evolve_driven(rho0, h0, sched, {1.5}), std::invalid_argument);
  CHECK_NOTHROW(evolve_driven(rho0, h0, sched, {1.0}));
  CHECK_THROWS_AS(evolve_driven(rho0, h0, sched, {0.5}, 0.0), std::invalid_argument);
}

TEST_CASE("midpoint stepper converges at second order on a sampled ramp") {
  const DensityMatrix rho0 = thermal_qubit();
  const HermitianOperator h0{sigma_z()};
  // grid spacing 2e-4 makes the staircase a faithful stand-in for the smooth
  // ramp; all three runs share it, so only the stepper's O(dt^2) error varies
  const DriveSchedule sched = ramp_schedule(1.0, 5001);
  const Matrix ref = evolve_driven(rho0, h0, sched, {1.0}, 2e-3).states[0].mat();
  const Matrix coarse = evolve_driven(rho0, h0, sched, {1.0}, 0.1).states[0].mat();
  const Matrix fine = evolve_driven(rho0, h0, sched, {1.0}, 0.05).states[0].mat();
  const double e_coarse = oracles::max_abs(coarse - ref);
  const double e_fine = oracles::max_abs(fine - ref);
  REQUIRE(e_coarse > 1e-9);  // measurable error, not rounding noise
  CHECK(e_coarse / e_fine == doctest::Approx(4.0).epsilon(0.3));

  const EvolutionResult counted = evolve_driven(rho0, h0, sched, {1.0}, 0.25);
  CHECK(counted.step_count == 4);
  CHECK(counted.max_unitarity_defect < 1e-9);
}

TEST_CASE("transport_conjugation carries matrices through the same unitaries") {
  Rng rng(402);
  const HermitianOperator h0 = random_hermitian(3, rng);
  const DensityMatrix rho0 = random_density(3, 3, rng);
  const HermitianOperator v = random_hermitian(3, rng);
  const DriveSchedule sched = DriveSchedule::constant(v);
  const TransportResult tr =
      transport_conjugation({rho0.mat(), h0.mat()}, h0, sched, {0.8});
  const EvolutionResult ev = evolve_driven(rho0, h0, sched, {0.8});
  CHECK(oracles::max_abs(tr.snapshots[0][0] - ev.states[0].mat()) <= 1e-13);
  // H0 + V is conserved under its own flow; transported H0 = (H0+V) - V exactly
  const Matrix expect_h0 = h0.mat() + v.mat() -
                           oracles::propagate(v.mat(), h0.mat() + v.mat(), 0.8);
  CHECK(oracles::max_abs(tr.snapshots[0][1] - expect_h0) <= 1e-12);
  CHECK_THROWS_AS(
      transport_conjugation({Matrix::Identity(2, 2)}, h0, sched, {0.1}),
      std::invalid_argument);
}

TEST_CASE("sqrt factor stays the square root of the evolved state") {
  const DensityMatrix rho0 = thermal_qubit();
  const HermitianOperator h0{sigma_z()};
  CHECK(sqrt_evolution_check(rho0, h0, DriveSchedule::constant(HermitianOperator{sigma_x()}),
                             1.0) < 1e-8);
  CHECK(sqrt_evolution_check(rho0, h0, ramp_schedule(1.0, 101), 1.0) < 1e-8);
  Rng rng(403);
  const HermitianOperator h4 = random_hermitian(4, rng);
  const DensityMatrix r4 = random_density(4, 2, rng);  // rank-deficient sqrt
  CHECK(sqrt_evolution_check(r4, h4, DriveSchedule::constant(random_hermitian(4, rng)), 0.7) <
        1e-8);
}

TEST_CASE("dtD identity holds for a constant quench") {
  const DensityMatrix rho0 = thermal_qubit();
  const HermitianOperator h0{sigma_z()};
  const DriveSchedule sched = DriveSchedule::constant(HermitianOperator{sigma_x()});
  const DtDCheck chk = dtD_identity_check(rho0, h0, sched, 0.7, 1e-4);
  CHECK(std::abs(chk.lhs - chk.rhs) <= 1e-6);
  CHECK(std::abs(chk.rhs) > 1e-3);  // a genuinely moving D, not a trivial zero

  // second-order stencil: quartering dt_fd shrinks the gap ~16x
  const DtDCheck c1 = dtD_identity_check(rho0, h0, sched, 0.7, 4e-3);
  const DtDCheck c2 = dtD_identity_check(rho0, h0, sched, 0.7, 1e-3);
  const double e1 = std::abs(c1.lhs - c1.rhs);
  const double e2 = std::abs(c2.lhs - c2.rhs);
  REQUIRE(e1 > 1e-10);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.25));
}

TEST_CASE("dtD stencil rejects discontinuities and support violations") {
  const DensityMatrix rho0 = thermal_qubit();
  const HermitianOperator h0{sigma_z()};
  const HermitianOperator v{sigma_x()};
  const DriveSchedule pw = DriveSchedule::piecewise({{1.0, v}, {1.0, v}});
  CHECK_THROWS_AS(dtD_identity_check(rho0, h0, pw, 1.0005, 1e-3), std::invalid_argument);
  CHECK_NOTHROW(dtD_identity_check(rho0, h0, pw, 1.5, 1e-3));
  CHECK_THROWS_AS(dtD_identity_check(rho0, h0, pw, 1.9995, 1e-3), std::invalid_argument);
  const DriveSchedule cs = DriveSchedule::constant(v);
  CHECK_THROWS_AS(dtD_identity_check(rho0, h0, cs, 5e-5, 1e-4), std::invalid_argument);
  CHECK_THROWS_AS(dtD_identity_check(rho0, h0, cs, 0.5, 0.0), std::invalid_argument);
}
