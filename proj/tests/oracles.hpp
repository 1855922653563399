#pragma once

// Test-local oracles, deliberately independent of the library's numerical
// paths: a scaling-and-squaring Taylor exponential plus small helpers the
// tests use to cross-check spectral propagators and closed-form bounds.

#include <tqsl/types.hpp>

#include <cmath>

namespace oracles {

inline double max_abs(const tqsl::Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// e^A by scaling-and-squaring on a plain Taylor series. Adequate for the
// small, well-scaled matrices used in tests: the norm is reduced below 1/2
// before the series, where 25 terms leave a remainder far below 1e-16.
inline tqsl::Matrix expm(const tqsl::Matrix& a) {
  const auto n = a.rows();
  int s = 0;
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.5) {
    norm *= 0.5;
    ++s;
  }
  const tqsl::Matrix x = a * std::ldexp(1.0, -s);
  tqsl::Matrix term = tqsl::Matrix::Identity(n, n);
  tqsl::Matrix sum = term;
  for (int k = 1; k <= 25; ++k) {
    term = (term * x) / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

// U rho U^dagger with U = e^{-iHt}: the textbook propagator, built from the
// series exponential rather than the library's spectral path.
inline tqsl::Matrix propagate(const tqsl::Matrix& rho, const tqsl::Matrix& h, double t) {
  const tqsl::Matrix u = expm(tqsl::cxd(0.0, -1.0) * t * h);
  return u * rho * u.adjoint();
}

}  // namespace oracles
