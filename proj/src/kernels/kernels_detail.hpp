#pragma once

#include <tqsl/kernels.hpp>

#if defined(__x86_64__) || defined(__i386__)
#define TQSL_HAVE_AVX2_KERNELS 1
#else
#define TQSL_HAVE_AVX2_KERNELS 0
#endif

namespace tqsl::kernels::detail {

cxd conj_dot_scalar(const cxd* a, const cxd* b, std::size_t n);
void sub_scalar(cxd* out, const cxd* a, const cxd* b, std::size_t n);
double max_abs_diff_scalar(const cxd* a, const cxd* b, std::size_t n);
void scale_columns_real_scalar(cxd* out, const cxd* in, const double* w, std::size_t n,
                               std::size_t m);
void phase_mix_scalar(cxd* out, const cxd* in, const cxd* phase, std::size_t n);

#if TQSL_HAVE_AVX2_KERNELS
cxd conj_dot_avx2(const cxd* a, const cxd* b, std::size_t n);
void sub_avx2(cxd* out, const cxd* a, const cxd* b, std::size_t n);
double max_abs_diff_avx2(const cxd* a, const cxd* b, std::size_t n);
void scale_columns_real_avx2(cxd* out, const cxd* in, const double* w, std::size_t n,
                             std::size_t m);
void phase_mix_avx2(cxd* out, const cxd* in, const cxd* phase, std::size_t n);
#endif

}  // namespace tqsl::kernels::detail
