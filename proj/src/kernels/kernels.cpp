#include "kernels_detail.hpp"

#include <tqsl/health.hpp>

#include <atomic>
#include <cstdlib>
#include <stdexcept>

namespace tqsl::kernels {

// ----- scalar reference implementations -----

namespace detail {

cxd conj_dot_scalar(const cxd* a, const cxd* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

void sub_scalar(cxd* out, const cxd* a, const cxd* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

double max_abs_diff_scalar(const cxd* a, const cxd* b, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dr = a[i].real() - b[i].real();
    const double di = a[i].imag() - b[i].imag();
    const double m2 = dr * dr + di * di;
    if (m2 > best) best = m2;
  }
  return std::sqrt(best);
}

void scale_columns_real_scalar(cxd* out, const cxd* in, const double* w, std::size_t n,
                               std::size_t m) {
  for (std::size_t j = 0; j < m; ++j) {
    const cxd* src = in + j * n;
    cxd* dst = out + j * n;
    const double wj = w[j];
    for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] * wj;
  }
}

void phase_mix_scalar(cxd* out, const cxd* in, const cxd* phase, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const cxd pj = std::conj(phase[j]);
    const cxd* src = in + j * n;
    cxd* dst = out + j * n;
    for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] * (phase[i] * pj);
  }
}

}  // namespace detail

// ----- runtime dispatch -----

bool cpu_supports_avx2() {
#if TQSL_HAVE_AVX2_KERNELS
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::string backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

namespace {

Backend detect_backend() {
  if (const char* env = std::getenv("TQSL_KERNELS")) {
    const std::string v(env);
    if (v == "scalar") return Backend::scalar;
    if (v == "avx2") {
      if (cpu_supports_avx2()) return Backend::avx2;
      health::warn("TQSL_KERNELS=avx2 requested but CPU lacks AVX2+FMA; using scalar kernels");
      return Backend::scalar;
    }
    if (!v.empty()) health::warn("unknown TQSL_KERNELS value '" + v + "'; using auto detection");
  }
  return cpu_supports_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_ref() {
  static std::atomic<Backend> b{detect_backend()};
  return b;
}

}  // namespace

Backend active_backend() { return backend_ref().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !cpu_supports_avx2())
    throw std::invalid_argument("kernels: AVX2 backend requested but CPU lacks AVX2+FMA");
  backend_ref().store(b, std::memory_order_relaxed);
}

// ----- public entry points -----

cxd conj_dot(const cxd* a, const cxd* b, std::size_t n) {
#if TQSL_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::avx2) return detail::conj_dot_avx2(a, b, n);
#endif
  return detail::conj_dot_scalar(a, b, n);
}

void sub(cxd* out, const cxd* a, const cxd* b, std::size_t n) {
#if TQSL_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::avx2) return detail::sub_avx2(out, a, b, n);
#endif
  detail::sub_scalar(out, a, b, n);
}

double max_abs_diff(const cxd* a, const cxd* b, std::size_t n) {
#if TQSL_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::avx2) return detail::max_abs_diff_avx2(a, b, n);
#endif
  return detail::max_abs_diff_scalar(a, b, n);
}

void scale_columns_real(cxd* out, const cxd* in, const double* w, std::size_t n, std::size_t m) {
#if TQSL_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::avx2)
    return detail::scale_columns_real_avx2(out, in, w, n, m);
#endif
  detail::scale_columns_real_scalar(out, in, w, n, m);
}

void phase_mix(cxd* out, const cxd* in, const cxd* phase, std::size_t n) {
#if TQSL_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::avx2) return detail::phase_mix_avx2(out, in, phase, n);
#endif
  detail::phase_mix_scalar(out, in, phase, n);
}

}  // namespace tqsl::kernels
