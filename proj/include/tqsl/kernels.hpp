#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Hot complex-array loops shared by the operator/evolution layers: scalar
// reference implementations plus AVX2+FMA variants selected at runtime.
// Selection order: TQSL_KERNELS environment variable ("scalar" / "avx2"),
// else CPU feature detection. set_backend() overrides programmatically.
// Eigendecompositions and matrix products stay with Eigen; these kernels
// cover the elementwise passes between them.

namespace tqsl::kernels {

using cxd = std::complex<double>;

enum class Backend { scalar, avx2 };

Backend active_backend();
// Throws std::invalid_argument if the requested backend is not available.
void set_backend(Backend b);
bool cpu_supports_avx2();
std::string backend_name(Backend b);

// sum_i conj(a[i]) * b[i]; the Frobenius inner product <A, B> when a and b
// are matrix storage, which is tr(A^dagger B) = tr(rho A) for Hermitian A.
cxd conj_dot(const cxd* a, const cxd* b, std::size_t n);

// out[i] = a[i] - b[i]
void sub(cxd* out, const cxd* a, const cxd* b, std::size_t n);

// max_i |a[i] - b[i]| (complex modulus)
double max_abs_diff(const cxd* a, const cxd* b, std::size_t n);

// out[:,j] = w[j] * in[:,j] for an n x m column-major matrix (thermal-weight
// scaling of an eigenvector matrix)
void scale_columns_real(cxd* out, const cxd* in, const double* w, std::size_t n, std::size_t m);

// out[i,j] = in[i,j] * phase[i] * conj(phase[j]) for an n x n column-major
// matrix (eigenframe propagation of a density matrix)
void phase_mix(cxd* out, const cxd* in, const cxd* phase, std::size_t n);

}  // namespace tqsl::kernels
