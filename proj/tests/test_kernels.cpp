#include "doctest.h"

#include <tqsl/kernels.hpp>
#include <tqsl/rng.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace {

using tqsl::Rng;
using namespace tqsl::kernels;

std::vector<cxd> random_vec(std::size_t n, Rng& rng) {
  std::vector<cxd> v(n);
  for (auto& z : v) z = cxd(rng.normal(), rng.normal());
  return v;
}

std::vector<cxd> random_phases(std::size_t n, Rng& rng) {
  std::vector<cxd> v(n);
  for (auto& z : v) {
    const double th = rng.uniform(0.0, 6.283185307179586);
    z = cxd(std::cos(th), std::sin(th));
  }
  return v;
}

// Restores whatever backend was active when the test started.
struct BackendGuard {
  Backend prev = active_backend();
  ~BackendGuard() { set_backend(prev); }
};

// Sizes exercising the vector main loops and every tail length.
const std::size_t kSizes[] = {1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 64, 67, 255, 1000};

}  // namespace

TEST_CASE("backend selection round-trips") {
  BackendGuard guard;
  set_backend(Backend::scalar);
  CHECK(active_backend() == Backend::scalar);
  CHECK(backend_name(Backend::scalar) == "scalar");
  CHECK(backend_name(Backend::avx2) == "avx2");
  if (cpu_supports_avx2()) {
    set_backend(Backend::avx2);
    CHECK(active_backend() == Backend::avx2);
  } else {
    CHECK_THROWS_AS(set_backend(Backend::avx2), std::invalid_argument);
  }
}

TEST_CASE("scalar kernels match plain reference loops") {
  BackendGuard guard;
  set_backend(Backend::scalar);
  Rng rng(7001);
  for (const std::size_t n : kSizes) {
    const auto a = random_vec(n, rng);
    const auto b = random_vec(n, rng);

    cxd dot_ref(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) dot_ref += std::conj(a[i]) * b[i];
    const cxd dot = conj_dot(a.data(), b.data(), n);
    CHECK(std::abs(dot - dot_ref) <= 1e-12 * (1.0 + std::abs(dot_ref)));

    std::vector<cxd> diff(n);
    sub(diff.data(), a.data(), b.data(), n);
    double mad_ref = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(diff[i] == a[i] - b[i]);
      mad_ref = std::max(mad_ref, std::abs(a[i] - b[i]));
    }
    const double mad = max_abs_diff(a.data(), b.data(), n);
    CHECK(mad == doctest::Approx(mad_ref).epsilon(1e-14));
  }
}

TEST_CASE("scale_columns_real scales each column by its weight") {
  BackendGuard guard;
  set_backend(Backend::scalar);
  Rng rng(7002);
  const std::size_t n = 13, m = 7;
  const auto in = random_vec(n * m, rng);
  std::vector<double> w(m);
  for (auto& x : w) x = rng.uniform(-2.0, 2.0);
  std::vector<cxd> out(n * m);
  scale_columns_real(out.data(), in.data(), w.data(), n, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) CHECK(out[j * n + i] == in[j * n + i] * w[j]);
}

TEST_CASE("phase_mix applies phase[i] * conj(phase[j]) entrywise") {
  BackendGuard guard;
  set_backend(Backend::scalar);
  Rng rng(7003);
  const std::size_t n = 9;
  const auto in = random_vec(n * n, rng);
  const auto ph = random_phases(n, rng);
  std::vector<cxd> out(n * n);
  phase_mix(out.data(), in.data(), ph.data(), n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const cxd expect = in[j * n + i] * ph[i] * std::conj(ph[j]);
      CHECK(std::abs(out[j * n + i] - expect) <= 1e-14);
    }
}

TEST_CASE("avx2 kernels agree with scalar kernels on all tail lengths") {
  if (!cpu_supports_avx2()) return;
  BackendGuard guard;
  Rng rng(7004);
  for (const std::size_t n : kSizes) {
    const auto a = random_vec(n, rng);
    const auto b = random_vec(n, rng);

    set_backend(Backend::scalar);
    const cxd dot_s = conj_dot(a.data(), b.data(), n);
    std::vector<cxd> sub_s(n);
    sub(sub_s.data(), a.data(), b.data(), n);
    const double mad_s = max_abs_diff(a.data(), b.data(), n);

    set_backend(Backend::avx2);
    const cxd dot_a = conj_dot(a.data(), b.data(), n);
    std::vector<cxd> sub_a(n);
    sub(sub_a.data(), a.data(), b.data(), n);
    const double mad_a = max_abs_diff(a.data(), b.data(), n);

    // conj_dot reassociates the sum (4 FMA accumulators); bound the
    // difference relative to the magnitude sum, not the (cancelling) result.
    double mag = 0.0;
    for (std::size_t i = 0; i < n; ++i) mag += std::abs(a[i]) * std::abs(b[i]);
    CHECK(std::abs(dot_a - dot_s) <= 1e-13 * (1.0 + mag));

    // elementwise subtract and max-|diff| are IEEE-identical across backends
    for (std::size_t i = 0; i < n; ++i) CHECK(sub_a[i] == sub_s[i]);
    CHECK(mad_a == mad_s);
  }
}

TEST_CASE("avx2 scale_columns_real and phase_mix agree with scalar") {
  if (!cpu_supports_avx2()) return;
  BackendGuard guard;
  Rng rng(7005);
  for (const std::size_t n : {1u, 2u, 3u, 8u, 9u, 31u, 64u}) {
    const std::size_t m = (n % 3) + 2;
    const auto in = random_vec(n * m, rng);
    std::vector<double> w(m);
    for (auto& x : w) x = rng.uniform(-2.0, 2.0);

    set_backend(Backend::scalar);
    std::vector<cxd> cols_s(n * m);
    scale_columns_real(cols_s.data(), in.data(), w.data(), n, m);
    set_backend(Backend::avx2);
    std::vector<cxd> cols_a(n * m);
    scale_columns_real(cols_a.data(), in.data(), w.data(), n, m);
    for (std::size_t i = 0; i < n * m; ++i) CHECK(cols_a[i] == cols_s[i]);

    const auto sq = random_vec(n * n, rng);
    const auto ph = random_phases(n, rng);
    set_backend(Backend::scalar);
    std::vector<cxd> mix_s(n * n);
    phase_mix(mix_s.data(), sq.data(), ph.data(), n);
    set_backend(Backend::avx2);
    std::vector<cxd> mix_a(n * n);
    phase_mix(mix_a.data(), sq.data(), ph.data(), n);
    // the avx2 path fuses the complex products (FMA); rounding differs at ulp level
    for (std::size_t i = 0; i < n * n; ++i) CHECK(std::abs(mix_a[i] - mix_s[i]) <= 1e-13);
  }
}
