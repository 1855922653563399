#pragma once

#include <complex>

#include <Eigen/Dense>

namespace tqsl {

// Units: hbar = k_B = 1; energies in a caller-chosen reference energy,
// times in inverse reference energy.
using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;   // dense complex, column-major
using RealVector = Eigen::VectorXd;

}  // namespace tqsl
