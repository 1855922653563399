#include "doctest.h"
#include "oracles.hpp"

#include <tqsl/bounds.hpp>
#include <tqsl/errors.hpp>
#include <tqsl/models.hpp>
#include <tqsl/operators.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace {

using namespace tqsl;
using namespace tqsl::models;

SpinBosonParams single_mode(int cutoff, double omega_spin = 0.02, double g = 0.2,
                            double omega = 1.6) {
  return SpinBosonParams{1, cutoff, omega_spin, {g}, {omega}};
}

double numeric_tqsl(const SpinBosonParams& p, PerturbationKind kind, double strength,
                    double beta, double t) {
  const HermitianOperator h0 = build_spin_boson(p);
  const HermitianOperator v = spin_boson_perturbation(p, kind, strength);
  return tqsl_quench(thermal_state(h0, beta), v, t);
}

}  // namespace

TEST_CASE("spin-boson hamiltonian matches the hand-built 4x4 case") {
  // N = 1, c = 2, Omega = g = omega = 1; basis index = 2*spin + occupation
  const SpinBosonParams p{1, 2, 1.0, {1.0}, {1.0}};
  Matrix expect(4, 4);
  expect << 1, 0, 0, 1,
            0, 2, 1, 0,
            0, 1, -1, 0,
            1, 0, 0, 0;
  CHECK(oracles::max_abs(build_spin_boson(p).mat() - expect) == 0.0);
}

TEST_CASE("uncoupled spin-boson spectrum is +-Omega plus mode quanta") {
  const SpinBosonParams p{2, 3, 0.7, {0.0, 0.0}, {1.1, 0.6}};
  const auto spec = spectral_decompose(build_spin_boson(p));
  std::vector<double> expect;
  for (const double s : {0.7, -0.7})
    for (int n1 = 0; n1 < 3; ++n1)
      for (int n2 = 0; n2 < 3; ++n2) expect.push_back(s + 1.1 * n1 + 0.6 * n2);
  std::sort(expect.begin(), expect.end());
  REQUIRE(spec.eigenvalues.size() == static_cast<int>(expect.size()));
  for (std::size_t i = 0; i < expect.size(); ++i)
    CHECK(spec.eigenvalues[static_cast<int>(i)] == doctest::Approx(expect[i]).epsilon(1e-12));
}

TEST_CASE("sampled parameters are deterministic, in range, and prefix-stable") {
  const SpinBosonParams p3 = sampled_spin_boson_params(3, 2, 99);
  const SpinBosonParams p5 = sampled_spin_boson_params(5, 2, 99);
  for (int k = 0; k < 3; ++k) {
    CHECK(p3.g[k] == p5.g[k]);
    CHECK(p3.omega[k] == p5.omega[k]);
  }
  for (int k = 0; k < 5; ++k) {
    CHECK(p5.omega[k] >= kDefaultOmegaMin);
    CHECK(p5.omega[k] <= kDefaultOmegaMax);
    CHECK(p5.g[k] >= kDefaultGMin);
    CHECK(p5.g[k] <= kDefaultGMax);
  }
  const SpinBosonParams q3 = sampled_spin_boson_params(3, 2, 99);
  CHECK(q3.g == p3.g);
  CHECK(q3.omega == p3.omega);
  CHECK(sampled_spin_boson_params(3, 2, 100).g != p3.g);
}

TEST_CASE("perturbation operators have the advertised structure") {
  const SpinBosonParams p = sampled_spin_boson_params(2, 3, 4);
  const CompositeSpace space({2, 3, 3});
  const Matrix local = spin_boson_perturbation(p, PerturbationKind::local_sigma_x, 0.05).mat();
  CHECK(oracles::max_abs(local - 0.05 * embed_op(sigma_x(), space, 0)) == 0.0);
  const Matrix shift = spin_boson_perturbation(p, PerturbationKind::mode_shift, 0.1).mat();
  const Matrix nsum =
      embed_op(number_op(3), space, 1) + embed_op(number_op(3), space, 2);
  CHECK(oracles::max_abs(shift - 0.1 * nsum) == 0.0);
  const Matrix zero = spin_boson_perturbation(p, PerturbationKind::trivial, 0.1).mat();
  CHECK(oracles::max_abs(zero) == 0.0);
  CHECK_THROWS_AS(build_spin_boson(SpinBosonParams{1, 1, 1.0, {1.0}, {1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_spin_boson(SpinBosonParams{2, 2, 1.0, {1.0}, {1.0, 1.0}}),
                  std::invalid_argument);
}

TEST_CASE("mode-shift commutator reduces to the quadrature form") {
  // [H0, s sum_k n_k] = (s/sqrt(N)) sigma_x (x) sum_k g_k (a_k - a_k^dag)
  for (const auto& [n_modes, cutoff] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {4, 4}}) {
    const SpinBosonParams p = sampled_spin_boson_params(n_modes, cutoff, 31);
    const double s = 0.1;
    const Matrix c_num = commutator(build_spin_boson(p).mat(),
                                    spin_boson_perturbation(p, PerturbationKind::mode_shift, s).mat());
    std::vector<int> dims(static_cast<std::size_t>(n_modes) + 1, cutoff);
    dims[0] = 2;
    const CompositeSpace space(dims);
    const Matrix a = ladder(cutoff);
    Matrix quad = Matrix::Zero(space.dim(), space.dim());
    for (int k = 0; k < n_modes; ++k)
      quad += p.g[static_cast<std::size_t>(k)] * embed_op(a - a.adjoint(), space, k + 1);
    const Matrix c_expect =
        (s / std::sqrt(static_cast<double>(n_modes))) * embed_op(sigma_x(), space, 0) * quad;
    CHECK(oracles::max_abs(c_num - c_expect) < 1e-12);
  }
}

TEST_CASE("local analytic bound equals the numeric bound at any coupling") {
  // [H0, eps sigma_x] = 2 i eps Omega sigma_y (x) I: the coupling term drops out
  for (const std::uint64_t seed : {11u, 12u}) {
    const SpinBosonParams p = sampled_spin_boson_params(3, 3, seed);
    const double analytic =
        spin_boson_analytic_tqsl(p, PerturbationKind::local_sigma_x, 0.05, 1.3, 0.4);
    const double numeric = numeric_tqsl(p, PerturbationKind::local_sigma_x, 0.05, 1.3, 0.4);
    CHECK(std::abs(analytic - numeric) <= 1e-12);
  }
  // frozen closed form sqrt(2 sqrt(2) * 0.1) at strength*Omega*beta*t = 0.1
  const SpinBosonParams p = single_mode(2);
  CHECK(spin_boson_analytic_tqsl(p, PerturbationKind::local_sigma_x, 0.05, 10.0, 10.0) ==
        doctest::Approx(0.53182958969449889).epsilon(1e-13));
  CHECK(std::abs(spin_boson_analytic_tqsl(p, PerturbationKind::local_sigma_x, 0.05, 10.0, 10.0) -
                 numeric_tqsl(p, PerturbationKind::local_sigma_x, 0.05, 10.0, 10.0)) <= 1e-12);
}

TEST_CASE("mode-shift analytic bound converges to the numeric bound with the cutoff") {
  const double s = 0.1, beta = 1.0, t = 1.0;
  double prev_err = 1.0;
  for (const auto& [cutoff, cap] : {std::pair{4, 1e-2}, {6, 1e-3}, {8, 1e-4}}) {
    const SpinBosonParams p = single_mode(cutoff);
    const double numeric = numeric_tqsl(p, PerturbationKind::mode_shift, s, beta, t);
    const double trunc =
        spin_boson_analytic_tqsl(p, PerturbationKind::mode_shift, s, beta, t);
    const double ideal = spin_boson_analytic_tqsl(p, PerturbationKind::mode_shift, s, beta, t,
                                                  OccupationMode::ideal);
    const double err_trunc = std::abs(trunc - numeric) / numeric;
    const double err_ideal = std::abs(ideal - numeric) / numeric;
    CHECK(err_trunc < cap);
    CHECK(err_trunc <= err_ideal + 1e-12);  // truncated occupations converge no slower
    CHECK(err_trunc < prev_err);
    prev_err = err_trunc;
  }
}

TEST_CASE("two-level modes make the quadrature identity exact") {
  // at c = 2, (a - a^dag)(a^dag - a) is the identity, so the bound closes to
  // sqrt(s g beta t) * 2^(1/4) independent of the occupations
  const SpinBosonParams p = single_mode(2);
  const double numeric = numeric_tqsl(p, PerturbationKind::mode_shift, 0.1, 1.0, 1.0);
  const double closed = std::sqrt(0.1 * 0.2 * 1.0 * 1.0) * std::pow(2.0, 0.25);
  CHECK(numeric == doctest::Approx(closed).epsilon(1e-7));
}

TEST_CASE("analytic bound edge cases") {
  const SpinBosonParams p = single_mode(2);
  CHECK(spin_boson_analytic_tqsl(p, PerturbationKind::trivial, 0.5, 1.0, 1.0) == 0.0);
  CHECK(spin_boson_analytic_tqsl(p, PerturbationKind::mode_shift, 0.1, 0.0, 1.0) == 0.0);
  CHECK(spin_boson_analytic_tqsl(p, PerturbationKind::mode_shift, 0.1, 1.0, 0.0) == 0.0);
  SpinBosonParams zero_g = p;
  zero_g.g[0] = 0.0;
  CHECK(spin_boson_analytic_tqsl(zero_g, PerturbationKind::mode_shift, 0.1, 1.0, 1.0) == 0.0);
  CHECK_THROWS_AS(spin_boson_analytic_tqsl(p, PerturbationKind::local_sigma_x, 0.1, -1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("occupation helpers") {
  CHECK(bose_einstein_occupation(1.0, 1.6) ==
        doctest::Approx(1.0 / std::expm1(1.6)).epsilon(1e-15));
  CHECK_THROWS_AS(bose_einstein_occupation(0.0, 1.0), std::invalid_argument);
  // two-level truncation: n_bar = e^{-x} / (1 + e^{-x})
  const double x = 1.6;
  CHECK(truncated_occupation(1.0, 1.6, 2) ==
        doctest::Approx(std::exp(-x) / (1.0 + std::exp(-x))).epsilon(1e-14));
  // deep cutoff recovers bose-einstein
  CHECK(truncated_occupation(1.0, 1.6, 40) ==
        doctest::Approx(bose_einstein_occupation(1.0, 1.6)).epsilon(1e-12));
  CHECK_THROWS_AS(truncated_occupation(1.0, 1.6, 1), std::invalid_argument);
}

TEST_CASE("impurity lattice operators") {
  const ImpurityLatticeParams p{6, 0.8, 0.3};
  const ImpurityOperators ops = build_impurity(p);

  // kinetic spectrum 2J(1 - cos(pi q / (L+1))), q = 1..L
  const auto spec = spectral_decompose(ops.h0);
  for (int q = 1; q <= 6; ++q) {
    const double expect = 2.0 * 0.8 * (1.0 - std::cos(3.14159265358979323846 * q / 7.0));
    CHECK(spec.eigenvalues[q - 1] == doctest::Approx(expect).epsilon(1e-12));
  }

  // momentum consistency: p2 = P^2 and [H0, X] = -i P / m exactly
  Matrix mom = Matrix::Zero(6, 6);
  for (int x = 0; x + 1 < 6; ++x) {
    mom(x, x + 1) = cxd(0.0, -0.5);
    mom(x + 1, x) = cxd(0.0, 0.5);
  }
  CHECK(oracles::max_abs(ops.p2.mat() - mom * mom) == 0.0);
  const Matrix x_op = ops.v.mat() / p.force;
  const double m = impurity_mass(p);
  CHECK(oracles::max_abs(commutator(ops.h0.mat(), x_op) + cxd(0.0, 1.0) / m * mom) <= 1e-14);

  CHECK_THROWS_AS(build_impurity({1, 1.0, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(build_impurity({6, 0.0, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(build_impurity({6, 1.0, -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(build_impurity({64, 1.0, 0.1}, 32), ResourceError);
}

TEST_CASE("impurity analytic bound equals the numeric bound") {
  const ImpurityLatticeParams p{8, 1.3, 0.2};
  const double beta = 0.9, t = 0.7;
  const ImpurityOperators ops = build_impurity(p);
  const double numeric = tqsl_quench(thermal_state(ops.h0, beta), ops.v, t);
  const double analytic = impurity_analytic_tqsl(p, beta, t);
  CHECK(analytic == doctest::Approx(numeric).epsilon(1e-12));
  CHECK_THROWS_AS(impurity_analytic_tqsl(p, -1.0, 0.5), std::invalid_argument);
}

TEST_CASE("spin chain construction is seeded and well-formed") {
  const SpinChainParams p{4, -1.0, 1.0, 17};
  const SpinChainOperators ops1 = build_spin_chain(p);
  const SpinChainOperators ops2 = build_spin_chain(p);
  CHECK(oracles::max_abs(ops1.h0.mat() - ops2.h0.mat()) == 0.0);
  CHECK(oracles::max_abs(ops1.v_local.mat() - ops2.v_local.mat()) == 0.0);
  CHECK(oracles::max_abs(ops1.v_nonlocal.mat() - ops2.v_nonlocal.mat()) == 0.0);
  SpinChainParams other = p;
  other.seed = 18;
  CHECK(oracles::max_abs(build_spin_chain(other).h0.mat() - ops1.h0.mat()) > 1e-3);

  CHECK(ops1.h0.dim() == 16);
  // the local perturbation acts on site 0 only: v_local = A (x) I_8
  Matrix a22 = Matrix::Zero(2, 2);
  a22(0, 0) = ops1.v_local.mat()(0, 0);
  a22(0, 1) = ops1.v_local.mat()(0, 8);
  a22(1, 0) = ops1.v_local.mat()(8, 0);
  a22(1, 1) = ops1.v_local.mat()(8, 8);
  CHECK(oracles::max_abs(ops1.v_local.mat() - kron(a22, Matrix::Identity(8, 8))) == 0.0);

  CHECK_THROWS_AS(build_spin_chain({1, -1.0, 1.0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(build_spin_chain({4, 1.0, -1.0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(build_spin_chain({13, -1.0, 1.0, 0}, 4096), ResourceError);
}
