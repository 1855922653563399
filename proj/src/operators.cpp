#include <tqsl/operators.hpp>

#include <tqsl/errors.hpp>
#include <tqsl/kernels.hpp>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace tqsl {

namespace {

std::string fmt_sci(double v) {
  std::ostringstream ss;
  ss.precision(3);
  ss << std::scientific << v;
  return ss.str();
}

}  // namespace

double hermiticity_deviation(const Matrix& m) {
  // || M - M^dagger ||_max; the adjoint is materialized once so the scan can
  // run through the flat kernel
  Matrix adj = m.adjoint();
  return kernels::max_abs_diff(m.data(), adj.data(),
                               static_cast<std::size_t>(m.size()));
}

// ----- HermitianOperator / DensityMatrix -----

HermitianOperator::HermitianOperator(Matrix m, double tol) : mat_(std::move(m)) {
  if (mat_.rows() < 1 || mat_.rows() != mat_.cols())
    throw std::invalid_argument("operator must be square with dim >= 1");
  const double dev = hermiticity_deviation(mat_);
  if (!(dev <= tol))
    throw std::invalid_argument("operator is not Hermitian: max deviation " + fmt_sci(dev) +
                                " exceeds tolerance " + fmt_sci(tol));
}

DensityMatrix::DensityMatrix(Matrix m) : op_(std::move(m)) {
  const cxd tr = op_.mat().trace();
  if (std::abs(tr - cxd(1.0, 0.0)) > 1e-12)
    throw std::invalid_argument("density matrix trace deviates from 1 by " +
                                fmt_sci(std::abs(tr - cxd(1.0, 0.0))));
  Eigen::SelfAdjointEigenSolver<Matrix> es(op_.mat(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed on density matrix");
  const double lo = es.eigenvalues().minCoeff();
  if (lo < -kPsdClampTol)
    throw std::invalid_argument("density matrix eigenvalue " + fmt_sci(lo) +
                                " below PSD tolerance -1e-12");
}

DensityMatrix::DensityMatrix(Matrix m, TrustedTag) : op_(std::move(m)) {
  const cxd tr = op_.mat().trace();
  if (std::abs(tr - cxd(1.0, 0.0)) > 1e-12)
    throw std::invalid_argument("density matrix trace deviates from 1 by " +
                                fmt_sci(std::abs(tr - cxd(1.0, 0.0))));
}

DensityMatrix DensityMatrix::trusted(Matrix m) { return DensityMatrix(std::move(m), TrustedTag{}); }

// ----- CompositeSpace -----

CompositeSpace::CompositeSpace(std::vector<int> factor_dims, int dim_cap)
    : dims_(std::move(factor_dims)) {
  if (dims_.empty()) throw std::invalid_argument("composite space needs at least one factor");
  std::int64_t prod = 1;
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("factor dimensions must be positive");
    prod *= d;
    if (prod > dim_cap)
      throw ResourceError("composite dimension " + std::to_string(prod) +
                          "+ exceeds cap " + std::to_string(dim_cap));
  }
  dim_ = static_cast<int>(prod);
}

// ----- spectral decomposition and matrix functions -----

SpectralDecomposition spectral_decompose(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.mat());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed to converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

namespace {

// U diag(vals) U^dagger via the column-scaling kernel plus one GEMM
Matrix synthesize(const Matrix& u, const RealVector& vals) {
  const std::size_t n = static_cast<std::size_t>(u.rows());
  Matrix scaled(u.rows(), u.cols());
  kernels::scale_columns_real(scaled.data(), u.data(), vals.data(), n, n);
  return scaled * u.adjoint();
}

}  // namespace

HermitianOperator matrix_function(const HermitianOperator& a,
                                  const std::function<double(double)>& f) {
  const SpectralDecomposition sd = spectral_decompose(a);
  RealVector vals(sd.eigenvalues.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    const double v = f(sd.eigenvalues[i]);
    if (!std::isfinite(v))
      throw std::domain_error("matrix_function: f not finite on eigenvalue " +
                              fmt_sci(sd.eigenvalues[i]));
    vals[i] = v;
  }
  return HermitianOperator(synthesize(sd.eigenvectors, vals), kHermTolDerived);
}

HermitianOperator psd_sqrt(const HermitianOperator& a) {
  const SpectralDecomposition sd = spectral_decompose(a);
  RealVector vals(sd.eigenvalues.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    double v = sd.eigenvalues[i];
    if (v < 0.0) {
      if (v < -kPsdClampTol)
        throw std::domain_error("psd_sqrt: eigenvalue " + fmt_sci(v) +
                                " below PSD clamp tolerance -1e-12");
      v = 0.0;
    }
    vals[i] = std::sqrt(v);
  }
  return HermitianOperator(synthesize(sd.eigenvectors, vals), kHermTolDerived);
}

// ----- commutators, tensor products, embeddings -----

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("commutator: dimension mismatch");
  Matrix ab = a * b;
  Matrix ba = b * a;
  Matrix out(a.rows(), a.cols());
  kernels::sub(out.data(), ab.data(), ba.data(), static_cast<std::size_t>(out.size()));
  return out;
}

Matrix commutator(const HermitianOperator& a, const HermitianOperator& b) {
  return commutator(a.mat(), b.mat());
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  Matrix out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i)
    for (Eigen::Index j = 0; j < ac; ++j)
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  return out;
}

Matrix kron_chain(const std::vector<Matrix>& factors) {
  if (factors.empty()) throw std::invalid_argument("kron_chain: empty factor list");
  Matrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

Matrix embed_op(const Matrix& a, const CompositeSpace& space, int slot) {
  if (slot < 0 || slot >= space.num_factors())
    throw std::invalid_argument("embed: slot out of range");
  if (a.rows() != space.factor_dims()[static_cast<std::size_t>(slot)])
    throw std::invalid_argument("embed: operator dim does not match slot dim");
  std::vector<Matrix> factors;
  factors.reserve(space.factor_dims().size());
  for (int k = 0; k < space.num_factors(); ++k)
    factors.push_back(k == slot ? a : identity(space.factor_dims()[static_cast<std::size_t>(k)]));
  return kron_chain(factors);
}

HermitianOperator tensor_product(const std::vector<HermitianOperator>& factors, int dim_cap) {
  if (factors.empty()) throw std::invalid_argument("tensor_product: empty factor list");
  std::int64_t prod = 1;
  std::vector<Matrix> mats;
  mats.reserve(factors.size());
  for (const auto& f : factors) {
    prod *= f.dim();
    if (prod > dim_cap)
      throw ResourceError("tensor product dimension " + std::to_string(prod) +
                          "+ exceeds cap " + std::to_string(dim_cap));
    mats.push_back(f.mat());
  }
  // kron of Hermitian factors is Hermitian exactly (entrywise conjugate products)
  return HermitianOperator(kron_chain(mats), kHermTolInput);
}

HermitianOperator embed(const HermitianOperator& a, const CompositeSpace& space, int slot) {
  return HermitianOperator(embed_op(a.mat(), space, slot), kHermTolInput);
}

// ----- partial trace -----

DensityMatrix partial_trace(const DensityMatrix& rho, const CompositeSpace& space,
                            const std::vector<int>& keep) {
  if (space.dim() != rho.dim())
    throw std::invalid_argument("partial_trace: space dim does not match state dim");
  const int nf = space.num_factors();
  std::vector<bool> kept(static_cast<std::size_t>(nf), false);
  for (int s : keep) {
    if (s < 0 || s >= nf) throw std::invalid_argument("partial_trace: slot out of range");
    if (kept[static_cast<std::size_t>(s)])
      throw std::invalid_argument("partial_trace: duplicate slot in keep set");
    kept[static_cast<std::size_t>(s)] = true;
  }
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");

  const auto& dims = space.factor_dims();
  int keep_dim = 1, trace_dim = 1;
  for (int k = 0; k < nf; ++k)
    (kept[static_cast<std::size_t>(k)] ? keep_dim : trace_dim) *= dims[static_cast<std::size_t>(k)];

  // decompose every full index into (keep part, trace part), factor 0 most
  // significant, kept slots in original order
  const int d = space.dim();
  std::vector<int> keep_idx(static_cast<std::size_t>(d)), trace_idx(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    // mixed-radix digits, most-significant factor first
    int rest = i, ki = 0, ti = 0, divisor = d;
    for (int k = 0; k < nf; ++k) {
      const int dk = dims[static_cast<std::size_t>(k)];
      divisor /= dk;
      const int digit = rest / divisor;
      rest %= divisor;
      if (kept[static_cast<std::size_t>(k)])
        ki = ki * dk + digit;
      else
        ti = ti * dk + digit;
    }
    keep_idx[static_cast<std::size_t>(i)] = ki;
    trace_idx[static_cast<std::size_t>(i)] = ti;
  }

  // bucket full indices by trace part, then accumulate each bucket's block
  std::vector<std::vector<int>> buckets(static_cast<std::size_t>(trace_dim));
  for (auto& b : buckets) b.reserve(static_cast<std::size_t>(keep_dim));
  for (int i = 0; i < d; ++i) buckets[static_cast<std::size_t>(trace_idx[static_cast<std::size_t>(i)])].push_back(i);

  const Matrix& r = rho.mat();
  Matrix out = Matrix::Zero(keep_dim, keep_dim);
  for (const auto& bucket : buckets)
    for (int i : bucket)
      for (int j : bucket)
        out(keep_idx[static_cast<std::size_t>(i)], keep_idx[static_cast<std::size_t>(j)]) += r(i, j);
  return DensityMatrix::trusted(std::move(out));
}

// ----- expectation values -----

cxd expectation(const DensityMatrix& rho, const HermitianOperator& a) {
  if (rho.dim() != a.dim()) throw std::invalid_argument("expectation: dimension mismatch");
  // tr(rho A) = sum_ij conj(A_ij) rho_ij for Hermitian A
  return kernels::conj_dot(a.mat().data(), rho.mat().data(),
                           static_cast<std::size_t>(a.mat().size()));
}

cxd expectation(const DensityMatrix& rho, const Matrix& a) {
  if (rho.mat().rows() != a.rows() || rho.mat().cols() != a.cols())
    throw std::invalid_argument("expectation: dimension mismatch");
  Matrix adj = a.adjoint();
  return kernels::conj_dot(adj.data(), rho.mat().data(),
                           static_cast<std::size_t>(adj.size()));
}

// ----- elementary building blocks -----

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix sigma_y() {
  Matrix m(2, 2);
  m << 0, cxd(0, -1), cxd(0, 1), 0;
  return m;
}

Matrix sigma_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix ladder(int cutoff) {
  if (cutoff < 2) throw std::invalid_argument("ladder: cutoff must be >= 2");
  Matrix a = Matrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix number_op(int cutoff) {
  if (cutoff < 2) throw std::invalid_argument("number_op: cutoff must be >= 2");
  Matrix n = Matrix::Zero(cutoff, cutoff);
  for (int k = 0; k < cutoff; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

HermitianOperator random_hermitian(int dim, Rng& rng) {
  Matrix g(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) g(i, j) = cxd(rng.normal(), rng.normal());
  Matrix h = 0.5 * (g + Matrix(g.adjoint()));
  return HermitianOperator(std::move(h), kHermTolInput);
}

DensityMatrix random_density(int dim, int rank, Rng& rng) {
  if (rank < 1 || rank > dim) throw std::invalid_argument("random_density: bad rank");
  Matrix psi(dim, rank);
  for (int j = 0; j < rank; ++j)
    for (int i = 0; i < dim; ++i) psi(i, j) = cxd(rng.normal(), rng.normal());
  Matrix rho = psi * psi.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::trusted(std::move(rho));
}

}  // namespace tqsl
