#include <tqsl/distances.hpp>

#include <tqsl/health.hpp>
#include <tqsl/kernels.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tqsl {

namespace {

void require_same_dim(const DensityMatrix& r1, const DensityMatrix& r2, const char* what) {
  if (r1.dim() != r2.dim())
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

// Clamp to [0,1]; deviations beyond `tol` outside the interval are errors.
double clamp_unit(double x, double tol, const char* what) {
  if (x > 1.0) {
    if (x > 1.0 + tol) {
      std::ostringstream ss;
      ss.precision(3);
      ss << std::scientific << what << ": value " << x << " exceeds 1 beyond tolerance";
      throw std::domain_error(ss.str());
    }
    return 1.0;
  }
  if (x < 0.0) {
    if (x < -tol) {
      std::ostringstream ss;
      ss.precision(3);
      ss << std::scientific << what << ": value " << x << " below 0 beyond tolerance";
      throw std::domain_error(ss.str());
    }
    return 0.0;
  }
  return x;
}

// tr(AB) = sum_ij conj(B_ij) A_ij for Hermitian A, B
double trace_product_herm(const Matrix& a, const Matrix& b) {
  return kernels::conj_dot(b.data(), a.data(), static_cast<std::size_t>(a.size())).real();
}

double bures_angle_impl(const DensityMatrix& r1, const DensityMatrix& r2) {
  const Matrix s1 = psd_sqrt(r1.op()).mat();
  Matrix b = s1 * r2.mat() * s1;
  Eigen::SelfAdjointEigenSolver<Matrix> es(b, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("bures_angle: eigensolver failed");
  double fid = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double lam = es.eigenvalues()[i];
    if (lam < 0.0) {
      if (lam < -kPsdClampTol) {
        std::ostringstream ss;
        ss.precision(3);
        ss << std::scientific
           << "bures_angle: inner sqrt argument has eigenvalue " << lam
           << " below PSD clamp tolerance";
        throw std::domain_error(ss.str());
      }
      lam = 0.0;
    }
    fid += std::sqrt(lam);
  }
  return std::acos(clamp_unit(fid, 1e-9, "bures_angle fidelity"));
}

}  // namespace

double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2) {
  require_same_dim(r1, r2, "trace_distance");
  Matrix diff(r1.dim(), r1.dim());
  kernels::sub(diff.data(), r2.mat().data(), r1.mat().data(),
               static_cast<std::size_t>(diff.size()));
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("trace_distance: eigensolver failed");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    sum += std::abs(es.eigenvalues()[i]);
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

double d_measure(const DensityMatrix& r1, const DensityMatrix& r2) {
  require_same_dim(r1, r2, "d_measure");
  const Matrix s1 = psd_sqrt(r1.op()).mat();
  const Matrix s2 = psd_sqrt(r2.op()).mat();
  return clamp_unit(1.0 - trace_product_herm(s1, s2), 1e-9, "d_measure");
}

double bures_angle(const DensityMatrix& r1, const DensityMatrix& r2) {
  require_same_dim(r1, r2, "bures_angle");
  return bures_angle_impl(r1, r2);
}

DistanceTriple distance_triple(const DensityMatrix& r1, const DensityMatrix& r2) {
  require_same_dim(r1, r2, "distance_triple");
  const double forward = bures_angle_impl(r1, r2);
  const double backward = bures_angle_impl(r2, r1);
  if (std::abs(forward - backward) > 1e-9) {
    std::ostringstream ss;
    ss.precision(3);
    ss << std::scientific << "bures_angle asymmetry " << std::abs(forward - backward)
       << " exceeds 1e-9 (conditioning problem)";
    health::warn(ss.str());
  }
  return {trace_distance(r1, r2), forward, d_measure(r1, r2)};
}

double wy_skew_information(const DensityMatrix& rho, const HermitianOperator& v) {
  if (rho.dim() != v.dim())
    throw std::invalid_argument("wy_skew_information: dimension mismatch");
  const Matrix s = psd_sqrt(rho.op()).mat();
  const Matrix k = commutator(s, v.mat());
  // [sqrt(rho), V] is anti-Hermitian, so -tr(K^2) = tr(K^dagger K) = ||K||_F^2
  return kernels::conj_dot(k.data(), k.data(), static_cast<std::size_t>(k.size())).real();
}

double holevo_rhs(double d) {
  if (!(d >= 0.0 && d <= 1.0))
    throw std::domain_error("holevo_rhs: argument outside [0, 1]");
  return std::sqrt(d * (2.0 - d));
}

double audenaert_rhs(double d) {
  if (!(d >= 0.0 && d <= 1.0))
    throw std::domain_error("audenaert_rhs: argument outside [0, 1]");
  return std::asin(std::min(1.0, std::sqrt(d * (2.0 - d))));
}

}  // namespace tqsl
