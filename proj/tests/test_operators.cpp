#include "doctest.h"
#include "oracles.hpp"

#include <tqsl/errors.hpp>
#include <tqsl/operators.hpp>
#include <tqsl/rng.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace {

using namespace tqsl;

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("hermiticity validation accepts Hermitian and rejects skewed input") {
  CHECK(hermiticity_deviation(sigma_y()) == 0.0);
  Matrix bad = sigma_x();
  bad(0, 1) += cxd(0.0, 2e-3);
  CHECK(hermiticity_deviation(bad) == doctest::Approx(2e-3).epsilon(1e-9));
  CHECK_THROWS_AS(HermitianOperator{bad}, std::invalid_argument);
  CHECK_NOTHROW(HermitianOperator(bad, 1e-2));
  CHECK_THROWS_AS(HermitianOperator(Matrix::Zero(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(HermitianOperator(Matrix::Zero(0, 0)), std::invalid_argument);
}

TEST_CASE("density matrix validation enforces trace and positivity") {
  CHECK_NOTHROW(DensityMatrix(diag2(0.5, 0.5)));
  CHECK_THROWS_AS(DensityMatrix(diag2(0.6, 0.6)), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(diag2(1.1, -0.1)), std::invalid_argument);
  // trusted() skips the spectrum check but still normalizes usage contracts
  const DensityMatrix rho = DensityMatrix::trusted(diag2(0.3, 0.7));
  CHECK(rho.dim() == 2);
  CHECK(rho.mat()(1, 1).real() == doctest::Approx(0.7));
}

TEST_CASE("spectral_decompose reconstructs the operator") {
  Rng rng(101);
  for (const int dim : {2, 3, 5, 8}) {
    const HermitianOperator a = random_hermitian(dim, rng);
    const auto spec = spectral_decompose(a);
    Matrix rebuilt = spec.eigenvectors * spec.eigenvalues.asDiagonal() * spec.eigenvectors.adjoint();
    CHECK(oracles::max_abs(rebuilt - a.mat()) <= 1e-12 * (1.0 + oracles::max_abs(a.mat())));
    // eigenvalues ascend (the order the thermal-weight code relies on)
    for (int i = 1; i < dim; ++i) CHECK(spec.eigenvalues[i] >= spec.eigenvalues[i - 1]);
  }
}

TEST_CASE("matrix_function and psd_sqrt") {
  Rng rng(102);
  const HermitianOperator a = random_hermitian(4, rng);
  const HermitianOperator sq = matrix_function(a, [](double x) { return x * x; });
  CHECK(oracles::max_abs(sq.mat() - a.mat() * a.mat()) <= 1e-12);
  CHECK_THROWS_AS(matrix_function(a, [](double) { return std::nan(""); }), std::domain_error);

  const DensityMatrix rho = random_density(5, 3, rng);
  const HermitianOperator root = psd_sqrt(rho.op());
  CHECK(oracles::max_abs(root.mat() * root.mat() - rho.mat()) <= 1e-12);
  Matrix negdef = -Matrix::Identity(2, 2);
  CHECK_THROWS_AS(psd_sqrt(HermitianOperator(negdef)), std::domain_error);
}

TEST_CASE("composite space dims and resource cap") {
  const CompositeSpace space({2, 3, 4});
  CHECK(space.dim() == 24);
  CHECK(space.num_factors() == 3);
  CHECK(space.factor_dims() == std::vector<int>{2, 3, 4});
  CHECK_THROWS_AS(CompositeSpace({2, 3, 4}, 16), ResourceError);
  CHECK_THROWS_AS(CompositeSpace({}), std::invalid_argument);
  CHECK_THROWS_AS(CompositeSpace({2, 0}), std::invalid_argument);
  // saturating overflow check: huge factor products must hit the cap, not wrap
  CHECK_THROWS_AS(CompositeSpace({100000, 100000, 100000}), ResourceError);
}

TEST_CASE("kron and embed_op agree with the identity-padded product") {
  const CompositeSpace space({2, 3, 2});
  const Matrix a = sigma_x();
  const Matrix expect = kron(kron(identity(2), identity(3)), a);
  CHECK(oracles::max_abs(embed_op(a, space, 2) - expect) == 0.0);
  const Matrix mid = kron(kron(identity(2), number_op(3)), identity(2));
  CHECK(oracles::max_abs(embed_op(number_op(3), space, 1) - mid) == 0.0);
  CHECK_THROWS_AS(embed_op(a, space, 3), std::invalid_argument);
  CHECK_THROWS_AS(embed_op(a, space, 1), std::invalid_argument);  // dim mismatch
}

TEST_CASE("embedded operators on different slots commute") {
  const CompositeSpace space({2, 2, 2});
  const Matrix x0 = embed_op(sigma_x(), space, 0);
  const Matrix z2 = embed_op(sigma_z(), space, 2);
  CHECK(oracles::max_abs(commutator(x0, z2)) == 0.0);
}

TEST_CASE("partial_trace recovers factors of a product state") {
  Rng rng(103);
  const CompositeSpace space({2, 3});
  const DensityMatrix ra = random_density(2, 2, rng);
  const DensityMatrix rb = random_density(3, 2, rng);
  const DensityMatrix joint = DensityMatrix::trusted(kron(ra.mat(), rb.mat()));
  const DensityMatrix back_a = partial_trace(joint, space, {0});
  const DensityMatrix back_b = partial_trace(joint, space, {1});
  CHECK(oracles::max_abs(back_a.mat() - ra.mat()) <= 1e-13);
  CHECK(oracles::max_abs(back_b.mat() - rb.mat()) <= 1e-13);
  CHECK(std::abs(back_a.mat().trace() - cxd(1.0, 0.0)) <= 1e-13);

  // keep-both is the identity map
  const DensityMatrix both = partial_trace(joint, space, {0, 1});
  CHECK(oracles::max_abs(both.mat() - joint.mat()) <= 1e-14);

  CHECK_THROWS_AS(partial_trace(joint, space, {}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(joint, space, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(joint, space, {2}), std::invalid_argument);
}

TEST_CASE("pauli algebra and bosonic operators") {
  CHECK(oracles::max_abs(sigma_x() * sigma_x() - identity(2)) == 0.0);
  CHECK(oracles::max_abs(sigma_y() * sigma_y() - identity(2)) == 0.0);
  CHECK(oracles::max_abs(sigma_z() * sigma_z() - identity(2)) == 0.0);
  // [sx, sz] = -2i sy
  CHECK(oracles::max_abs(commutator(sigma_x(), sigma_z()) + cxd(0.0, 2.0) * sigma_y()) == 0.0);

  const int c = 5;
  const Matrix a = ladder(c);
  const Matrix nop = number_op(c);
  CHECK(oracles::max_abs(a.adjoint() * a - nop) <= 1e-15);
  // truncated CCR: [a, a^dag] = I except the last diagonal entry (c-1) - c
  Matrix ccr = commutator(a, a.adjoint());
  CHECK(std::abs(ccr(0, 0) - cxd(1.0, 0.0)) == 0.0);
  CHECK(std::abs(ccr(c - 1, c - 1) - cxd(1.0 - c, 0.0)) <= 1e-15);
  CHECK(std::abs(a(0, 1) - cxd(1.0, 0.0)) == 0.0);
  CHECK(std::abs(a(2, 3) - cxd(std::sqrt(3.0), 0.0)) == 0.0);
  CHECK_THROWS_AS(ladder(1), std::invalid_argument);
  CHECK_THROWS_AS(number_op(0), std::invalid_argument);
}

TEST_CASE("expectation values") {
  const DensityMatrix rho(diag2(0.7, 0.3));
  const HermitianOperator z{sigma_z()};
  CHECK(expectation(rho, z).real() == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(std::abs(expectation(rho, z).imag()) <= 1e-15);
  CHECK_THROWS_AS(expectation(rho, HermitianOperator(Matrix::Identity(3, 3))),
                  std::invalid_argument);
}

TEST_CASE("seeded randomness is deterministic and well-formed") {
  Rng r1(42), r2(42);
  const HermitianOperator h1 = random_hermitian(6, r1);
  const HermitianOperator h2 = random_hermitian(6, r2);
  CHECK(oracles::max_abs(h1.mat() - h2.mat()) == 0.0);
  CHECK(hermiticity_deviation(h1.mat()) == 0.0);

  const DensityMatrix d1 = random_density(6, 3, r1);
  const DensityMatrix d2 = random_density(6, 3, r2);
  CHECK(oracles::max_abs(d1.mat() - d2.mat()) == 0.0);
  CHECK(std::abs(d1.mat().trace() - cxd(1.0, 0.0)) <= 1e-14);
  // rank-3 state of dim 6: three eigenvalues vanish
  const auto spec = spectral_decompose(d1.op());
  CHECK(std::abs(spec.eigenvalues[0]) <= 1e-14);
  CHECK(std::abs(spec.eigenvalues[2]) <= 1e-14);
  CHECK(spec.eigenvalues[3] > 1e-6);
  CHECK_THROWS_AS(random_density(3, 4, r1), std::invalid_argument);
}
