#include "kernels_detail.hpp"

#if TQSL_HAVE_AVX2_KERNELS

#include <immintrin.h>

#include <cmath>
#include <cstdint>

// Complex doubles are stored [re, im]; a __m256d register holds two of them.
// Functions carry per-function target attributes so this translation unit can
// be compiled without -mavx2 and still be safe to link on any x86-64 CPU (the
// dispatcher guards every call with a runtime CPUID check).

namespace tqsl::kernels::detail {

namespace {

// sign-flip mask for lanes 0 and 2 (the real slots of the two complexes)
__attribute__((target("avx2"))) inline __m256d even_lane_signflip() {
  const std::int64_t sb = static_cast<std::int64_t>(0x8000000000000000ULL);
  return _mm256_castsi256_pd(_mm256_set_epi64x(0, sb, 0, sb));
}

}  // namespace

__attribute__((target("avx2,fma")))
cxd conj_dot_avx2(const cxd* a, const cxd* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
  __m256d im0 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  const __m256d flip = even_lane_signflip();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d a0 = _mm256_loadu_pd(pa + 2 * k);
    const __m256d a1 = _mm256_loadu_pd(pa + 2 * k + 4);
    const __m256d b0 = _mm256_loadu_pd(pb + 2 * k);
    const __m256d b1 = _mm256_loadu_pd(pb + 2 * k + 4);
    // real part: lanewise ar*br + ai*bi, summed across all lanes at the end
    re0 = _mm256_fmadd_pd(a0, b0, re0);
    re1 = _mm256_fmadd_pd(a1, b1, re1);
    // imag part: ar*bi - ai*br via swapped a with sign-flipped real lanes
    const __m256d s0 = _mm256_xor_pd(_mm256_permute_pd(a0, 0x5), flip);
    const __m256d s1 = _mm256_xor_pd(_mm256_permute_pd(a1, 0x5), flip);
    im0 = _mm256_fmadd_pd(s0, b0, im0);
    im1 = _mm256_fmadd_pd(s1, b1, im1);
  }
  double rebuf[4], imbuf[4];
  _mm256_storeu_pd(rebuf, _mm256_add_pd(re0, re1));
  _mm256_storeu_pd(imbuf, _mm256_add_pd(im0, im1));
  double re = rebuf[0] + rebuf[1] + rebuf[2] + rebuf[3];
  double im = imbuf[0] + imbuf[1] + imbuf[2] + imbuf[3];
  for (; k < n; ++k) {
    const double ar = pa[2 * k], ai = pa[2 * k + 1];
    const double br = pb[2 * k], bi = pb[2 * k + 1];
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

__attribute__((target("avx2")))
void sub_avx2(cxd* out, const cxd* a, const cxd* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double* po = reinterpret_cast<double*>(out);
  const std::size_t len = 2 * n;
  std::size_t k = 0;
  for (; k + 8 <= len; k += 8) {
    _mm256_storeu_pd(po + k,
                     _mm256_sub_pd(_mm256_loadu_pd(pa + k), _mm256_loadu_pd(pb + k)));
    _mm256_storeu_pd(po + k + 4,
                     _mm256_sub_pd(_mm256_loadu_pd(pa + k + 4), _mm256_loadu_pd(pb + k + 4)));
  }
  for (; k < len; ++k) po[k] = pa[k] - pb[k];
}

__attribute__((target("avx2")))
double max_abs_diff_avx2(const cxd* a, const cxd* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + 2 * k), _mm256_loadu_pd(pb + 2 * k));
    const __m256d sq = _mm256_mul_pd(d, d);
    // hadd within 128-bit lanes: |z0|^2 lands in lanes 0/1, |z1|^2 in 2/3
    acc = _mm256_max_pd(acc, _mm256_hadd_pd(sq, sq));
  }
  double buf[4];
  _mm256_storeu_pd(buf, acc);
  double best = buf[0] > buf[2] ? buf[0] : buf[2];
  for (; k < n; ++k) {
    const double dr = pa[2 * k] - pb[2 * k];
    const double di = pa[2 * k + 1] - pb[2 * k + 1];
    const double m2 = dr * dr + di * di;
    if (m2 > best) best = m2;
  }
  return std::sqrt(best);
}

__attribute__((target("avx2")))
void scale_columns_real_avx2(cxd* out, const cxd* in, const double* w, std::size_t n,
                             std::size_t m) {
  const std::size_t len = 2 * n;
  for (std::size_t j = 0; j < m; ++j) {
    const double* src = reinterpret_cast<const double*>(in + j * n);
    double* dst = reinterpret_cast<double*>(out + j * n);
    const __m256d wv = _mm256_set1_pd(w[j]);
    std::size_t k = 0;
    for (; k + 4 <= len; k += 4)
      _mm256_storeu_pd(dst + k, _mm256_mul_pd(_mm256_loadu_pd(src + k), wv));
    for (; k < len; ++k) dst[k] = src[k] * w[j];
  }
}

__attribute__((target("avx2,fma")))
void phase_mix_avx2(cxd* out, const cxd* in, const cxd* phase, std::size_t n) {
  const double* ph = reinterpret_cast<const double*>(phase);
  for (std::size_t j = 0; j < n; ++j) {
    const cxd pj = std::conj(phase[j]);
    const double* src = reinterpret_cast<const double*>(in + j * n);
    double* dst = reinterpret_cast<double*>(out + j * n);
    const __m256d c_re = _mm256_set1_pd(pj.real());
    const __m256d c_im = _mm256_set1_pd(pj.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
      // f = phase[i..i+1] * conj(phase[j])
      const __m256d p = _mm256_loadu_pd(ph + 2 * i);
      const __m256d p_sw = _mm256_permute_pd(p, 0x5);
      const __m256d f = _mm256_fmaddsub_pd(p, c_re, _mm256_mul_pd(p_sw, c_im));
      // out = in * f
      const __m256d x = _mm256_loadu_pd(src + 2 * i);
      const __m256d f_re = _mm256_movedup_pd(f);
      const __m256d f_im = _mm256_permute_pd(f, 0xF);
      const __m256d x_sw = _mm256_permute_pd(x, 0x5);
      _mm256_storeu_pd(dst + 2 * i, _mm256_fmaddsub_pd(x, f_re, _mm256_mul_pd(x_sw, f_im)));
    }
    for (; i < n; ++i) out[j * n + i] = in[j * n + i] * (phase[i] * pj);
  }
}

}  // namespace tqsl::kernels::detail

#endif  // TQSL_HAVE_AVX2_KERNELS
