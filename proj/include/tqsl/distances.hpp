#pragma once

#include <tqsl/operators.hpp>

namespace tqsl {

struct DistanceTriple {
  double trace_distance;  // in [0, 1]
  double bures_angle;     // in [0, pi/2]
  double d_measure;       // in [0, 1]
};

// (1/2) tr |rho2 - rho1|, from the eigenvalues of the Hermitian difference.
double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2);

// 1 - tr(sqrt(rho1) sqrt(rho2)).
double d_measure(const DensityMatrix& r1, const DensityMatrix& r2);

// arccos tr sqrt(sqrt(rho1) rho2 sqrt(rho1)) via eigen-sqrt composition.
// Asymmetry between the two orderings is a conditioning signal and is NOT
// averaged away; distance_triple() reports it as a health warning.
double bures_angle(const DensityMatrix& r1, const DensityMatrix& r2);

// All three measures at once; evaluates the Bures angle in both orderings and
// reports asymmetry beyond 1e-9 through the health channel.
DistanceTriple distance_triple(const DensityMatrix& r1, const DensityMatrix& r2);

// -tr([sqrt(rho), V]^2): the Wigner-Yanase skew information (no 1/2 factor),
// computed structurally as ||[sqrt(rho), V]||_F^2 >= 0.
double wy_skew_information(const DensityMatrix& rho, const HermitianOperator& v);

// sqrt(d(2-d)) for d in [0,1].
double holevo_rhs(double d);
// arcsin(min(1, sqrt(d(2-d)))) for d in [0,1].
double audenaert_rhs(double d);

}  // namespace tqsl
