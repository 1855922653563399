#pragma once

#include <tqsl/rng.hpp>
#include <tqsl/types.hpp>

#include <functional>
#include <vector>

namespace tqsl {

// Shared tolerances
inline constexpr double kHermTolInput = 1e-12;    // hermiticity, caller-provided operators
inline constexpr double kHermTolDerived = 1e-10;  // hermiticity, derived results
inline constexpr double kPsdClampTol = 1e-12;     // eigenvalues in [-tol, 0) clamp to 0
inline constexpr int kDefaultDimCap = 4096;       // dense-matrix dimension cap

// max_{ij} |m(i,j) - conj(m(j,i))|
double hermiticity_deviation(const Matrix& m);

class HermitianOperator {
 public:
  // Validates dim >= 1 and hermiticity (max abs deviation <= tol).
  explicit HermitianOperator(Matrix m, double tol = kHermTolInput);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& mat() const { return mat_; }

 private:
  Matrix mat_;
};

class DensityMatrix {
 public:
  // Validates hermiticity, unit trace (1e-12) and spectrum >= -1e-12.
  explicit DensityMatrix(Matrix m);

  // Skips the spectral check for matrices that are PSD by construction
  // (unitary conjugations, spectral synthesis); hermiticity and trace are
  // still validated.
  static DensityMatrix trusted(Matrix m);

  int dim() const { return op_.dim(); }
  const Matrix& mat() const { return op_.mat(); }
  const HermitianOperator& op() const { return op_; }

 private:
  struct TrustedTag {};
  DensityMatrix(Matrix m, TrustedTag);
  HermitianOperator op_;
};

struct SpectralDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // unitary; column k pairs with eigenvalues[k]
};

class CompositeSpace {
 public:
  explicit CompositeSpace(std::vector<int> factor_dims, int dim_cap = kDefaultDimCap);

  int dim() const { return dim_; }
  const std::vector<int>& factor_dims() const { return dims_; }
  int num_factors() const { return static_cast<int>(dims_.size()); }

 private:
  std::vector<int> dims_;
  int dim_;
};

SpectralDecomposition spectral_decompose(const HermitianOperator& a);

// U diag(f(lambda)) U^dagger; f must be finite on every eigenvalue
// (std::domain_error otherwise).
HermitianOperator matrix_function(const HermitianOperator& a,
                                  const std::function<double(double)>& f);

// sqrt of an intended-PSD operator: eigenvalues in [-1e-12, 0) are clamped
// to 0; more negative values are hard errors.
HermitianOperator psd_sqrt(const HermitianOperator& a);

// AB - BA (anti-Hermitian for Hermitian inputs), returned as a raw matrix.
Matrix commutator(const Matrix& a, const Matrix& b);
Matrix commutator(const HermitianOperator& a, const HermitianOperator& b);

// Kronecker product, factor 0 most significant in the joint index.
Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron_chain(const std::vector<Matrix>& factors);

// A acting on `slot` with identities elsewhere (no hermiticity requirement).
Matrix embed_op(const Matrix& a, const CompositeSpace& space, int slot);

HermitianOperator tensor_product(const std::vector<HermitianOperator>& factors,
                                 int dim_cap = kDefaultDimCap);
HermitianOperator embed(const HermitianOperator& a, const CompositeSpace& space, int slot);

// Trace out every factor not in `keep`; kept slots stay in original order.
DensityMatrix partial_trace(const DensityMatrix& rho, const CompositeSpace& space,
                            const std::vector<int>& keep);

// tr(rho A); imaginary part is rounding-level when A is Hermitian.
cxd expectation(const DensityMatrix& rho, const HermitianOperator& a);
cxd expectation(const DensityMatrix& rho, const Matrix& a);

// ----- elementary building blocks -----
Matrix identity(int dim);
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();
Matrix ladder(int cutoff);     // a|n> = sqrt(n)|n-1>, truncated to `cutoff` levels
Matrix number_op(int cutoff);  // a^dagger a, diagonal 0..cutoff-1

// Seeded random Hermitian matrix (Gaussian entries, symmetrized).
HermitianOperator random_hermitian(int dim, Rng& rng);
// Seeded random density matrix of the given rank (Wishart-style, normalized).
DensityMatrix random_density(int dim, int rank, Rng& rng);

}  // namespace tqsl
