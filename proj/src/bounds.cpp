#include <tqsl/bounds.hpp>

#include <tqsl/kernels.hpp>

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace tqsl {

namespace {

void require_dim(const ThermalContext& ctx, const HermitianOperator& v, const char* what) {
  if (ctx.h0.dim() != v.dim())
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

void require_time(double t, const char* what) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument(std::string(what) + ": time must be finite and >= 0");
}

double trace_product(const Matrix& a, const Matrix& rho) {
  return kernels::conj_dot(a.data(), rho.data(), static_cast<std::size_t>(a.size())).real();
}

// ||A sqrt(rho0)||_F^2 = <A^dagger A>_beta; nonnegative by construction.
double quadratic_average(const Matrix& a, const Matrix& sqrt_rho) {
  Matrix m = a * sqrt_rho;
  return kernels::conj_dot(m.data(), m.data(), static_cast<std::size_t>(m.size())).real();
}

// -<[H0,V]^2>_beta = <C^dagger C>_beta with C = [H0, V]
double commutator_average(const ThermalContext& ctx, const HermitianOperator& v) {
  return quadratic_average(commutator(ctx.h0.mat(), v.mat()), ctx.sqrt_rho0.mat());
}

// Wigner-Yanase skew information ||[sqrt(rho0), V]||_F^2
double skew_information(const ThermalContext& ctx, const HermitianOperator& v) {
  const Matrix k = commutator(ctx.sqrt_rho0.mat(), v.mat());
  return kernels::conj_dot(k.data(), k.data(), static_cast<std::size_t>(k.size())).real();
}

double ground_energy(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("ground_energy: eigensolver failed");
  return es.eigenvalues()[0];
}

// ----- scalar compositions shared by the per-call API and bound_report -----

double tqsl_raw_from_average(double beta, double t, double avg) {
  return std::sqrt(beta * t) * std::pow(2.0 * avg, 0.25);
}

double ml_raw_from_ebar(double ebar, double t) { return std::sqrt(2.0 * ebar * t); }

double checked_ebar(double mean_e, double e_gs, const char* what) {
  const double ebar = mean_e - e_gs;
  if (ebar < -1e-10) {
    std::ostringstream ss;
    ss.precision(3);
    ss << std::scientific << what << ": mean excess energy " << ebar
       << " violates the variational inequality";
    throw std::runtime_error(ss.str());
  }
  return std::max(0.0, ebar);
}

MdsOriginal mds_from_skew(double i_wy, double t) {
  const double arg = 0.5 * t * std::sqrt(i_wy);
  const bool domain_ok = arg <= std::numbers::pi / 4.0;
  const double s = std::sin(arg);
  const double d_bound = 2.0 * s * s;
  // In-domain d_bound <= 1 up to rounding; the min() guards the conversion.
  const double trace_bound = domain_ok ? holevo_rhs(std::min(1.0, d_bound)) : 1.0;
  return {d_bound, trace_bound, domain_ok};
}

double mds_simplified_raw_from_v2(double v2, double t) { return t * std::sqrt(2.0 * v2); }

// Composite Simpson with panel-doubling refinement; converges when the
// relative change between refinements drops below tol.
double simpson_refine(const std::function<double(double)>& f, double a, double b, double tol) {
  auto composite = [&](long n) {
    const double h = (b - a) / static_cast<double>(n);
    double acc = f(a) + f(b);
    for (long i = 1; i < n; ++i)
      acc += ((i & 1) ? 4.0 : 2.0) * f(a + static_cast<double>(i) * h);
    return acc * h / 3.0;
  };
  long n = 2;
  double prev = composite(n);
  for (int iter = 0; iter < 24; ++iter) {
    n *= 2;
    const double cur = composite(n);
    if (std::abs(cur - prev) <= tol * std::max(std::abs(cur), 1e-30)) return cur;
    prev = cur;
  }
  throw std::runtime_error("tqsl_general: quadrature refinement failed to converge");
}

// Nuclear norm ||sqrt(rho0) sqrt(rho_t)||_1: the Uhlmann fidelity, stable
// near F = 1 where the eigen-sqrt composition loses digits.
double fidelity_from_sqrts(const Matrix& s0, const Matrix& s_t) {
  Eigen::BDCSVD<Matrix> svd(s0 * s_t);
  return svd.singularValues().sum();
}

}  // namespace

// ---------------------------------------------------------------------------
// Thermal state
// ---------------------------------------------------------------------------

ThermalContext thermal_state(const HermitianOperator& h0, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("thermal_state: beta must be finite and >= 0");
  const int d = h0.dim();
  SpectralDecomposition sd = spectral_decompose(h0);

  if (beta == 0.0) {
    // Infinite temperature: exactly the maximally mixed state.
    Matrix rho = Matrix::Identity(d, d) / static_cast<double>(d);
    Matrix sq = Matrix::Identity(d, d) / std::sqrt(static_cast<double>(d));
    return ThermalContext{h0,
                          beta,
                          DensityMatrix::trusted(std::move(rho)),
                          static_cast<double>(d),
                          std::nullopt,
                          std::move(sd),
                          RealVector::Constant(d, 1.0 / d),
                          HermitianOperator(std::move(sq))};
  }

  // Shift-stabilized weights e^{-beta(E - E_min)} / sum, invariant under the
  // shift; the unshifted Z0 is reported separately.
  const double e_min = sd.eigenvalues[0];
  RealVector w(d);
  double z_shift = 0.0;
  for (int i = 0; i < d; ++i) {
    w[i] = std::exp(-beta * (sd.eigenvalues[i] - e_min));
    z_shift += w[i];
  }
  w /= z_shift;
  const double z0 = z_shift * std::exp(-beta * e_min);

  const auto n = static_cast<std::size_t>(d);
  Matrix scaled(d, d);
  kernels::scale_columns_real(scaled.data(), sd.eigenvectors.data(), w.data(), n, n);
  Matrix rho = scaled * sd.eigenvectors.adjoint();

  const RealVector w_sqrt = w.array().sqrt();
  kernels::scale_columns_real(scaled.data(), sd.eigenvectors.data(), w_sqrt.data(), n, n);
  Matrix sq = scaled * sd.eigenvectors.adjoint();

  return ThermalContext{h0,
                        beta,
                        DensityMatrix::trusted(std::move(rho)),
                        z0,
                        std::nullopt,
                        std::move(sd),
                        std::move(w),
                        HermitianOperator(std::move(sq), kHermTolDerived)};
}

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

double tqsl_quench_raw(const ThermalContext& ctx, const HermitianOperator& v, double t) {
  require_dim(ctx, v, "tqsl_quench");
  require_time(t, "tqsl_quench");
  return tqsl_raw_from_average(ctx.beta, t, commutator_average(ctx, v));
}

double tqsl_quench(const ThermalContext& ctx, const HermitianOperator& v, double t) {
  return std::min(1.0, tqsl_quench_raw(ctx, v, t));
}

double tqsl_general_raw(const ThermalContext& ctx, const DriveSchedule& schedule, double t,
                        double quadrature_tol) {
  require_time(t, "tqsl_general");
  if (!(quadrature_tol > 0.0))
    throw std::invalid_argument("tqsl_general: quadrature tolerance must be positive");
  if (schedule.dim() != ctx.h0.dim())
    throw std::invalid_argument("tqsl_general: dimension mismatch");
  if (t > schedule.end_time())
    throw std::invalid_argument("tqsl_general: time beyond schedule support");

  if (schedule.kind() == DriveSchedule::Kind::constant)
    return tqsl_quench_raw(ctx, schedule.values().front(), t);

  // Staircase integral of g(t') = sqrt(-2<[H0,V_t']^2>): piecewise segments
  // integrate exactly; sampled plateaus go through Simpson refinement.
  const std::vector<double>& knots = schedule.knots();
  double integral = 0.0;
  for (std::size_t k = 0; k < knots.size(); ++k) {
    const double a = knots[k];
    if (a >= t) break;
    const double b =
        std::min(t, (k + 1 < knots.size()) ? knots[k + 1] : schedule.end_time());
    if (b <= a) continue;
    const double g = std::sqrt(2.0 * commutator_average(ctx, schedule.values()[k]));
    if (schedule.kind() == DriveSchedule::Kind::piecewise)
      integral += (b - a) * g;
    else
      integral += simpson_refine([g](double) { return g; }, a, b, quadrature_tol);
  }
  return std::sqrt(ctx.beta * integral);
}

double tqsl_general(const ThermalContext& ctx, const DriveSchedule& schedule, double t,
                    double quadrature_tol) {
  return std::min(1.0, tqsl_general_raw(ctx, schedule, t, quadrature_tol));
}

double tqsl_bures(const ThermalContext& ctx, const HermitianOperator& v, double t) {
  return std::asin(std::min(1.0, tqsl_quench_raw(ctx, v, t)));
}

double tqsl_bures(const ThermalContext& ctx, const DriveSchedule& schedule, double t,
                  double quadrature_tol) {
  return std::asin(std::min(1.0, tqsl_general_raw(ctx, schedule, t, quadrature_tol)));
}

double mt_bound_raw(const ThermalContext& ctx, const HermitianOperator& v, double t) {
  require_dim(ctx, v, "mt_bound");
  require_time(t, "mt_bound");
  Matrix h = ctx.h0.mat() + v.mat();
  const double mean_e = trace_product(h, ctx.rho0.mat());
  // centered second moment <(H - <H>)^2>, nonnegative by construction
  h.diagonal().array() -= mean_e;
  return std::sqrt(quadratic_average(h, ctx.sqrt_rho0.mat())) * t;
}

double mt_bound(const ThermalContext& ctx, const HermitianOperator& v, double t) {
  return std::min(1.0, mt_bound_raw(ctx, v, t));
}

double ml_bound_raw(const ThermalContext& ctx, const HermitianOperator& v, double t) {
  require_dim(ctx, v, "ml_bound");
  require_time(t, "ml_bound");
  const Matrix h = ctx.h0.mat() + v.mat();
  const double mean_e = trace_product(h, ctx.rho0.mat());
  const double e_gs = ctx.e_gs ? *ctx.e_gs : ground_energy(h);
  return ml_raw_from_ebar(checked_ebar(mean_e, e_gs, "ml_bound"), t);
}

double ml_bound(const ThermalContext& ctx, const HermitianOperator& v, double t) {
  return std::min(1.0, ml_bound_raw(ctx, v, t));
}

MdsOriginal mds_original(const ThermalContext& ctx, const HermitianOperator& v, double t) {
  require_dim(ctx, v, "mds_original");
  require_time(t, "mds_original");
  return mds_from_skew(skew_information(ctx, v), t);
}

double mds_simplified_raw(const ThermalContext& ctx, const HermitianOperator& v, double t) {
  require_dim(ctx, v, "mds_simplified");
  require_time(t, "mds_simplified");
  return mds_simplified_raw_from_v2(quadratic_average(v.mat(), ctx.sqrt_rho0.mat()), t);
}

double mds_simplified(const ThermalContext& ctx, const HermitianOperator& v, double t) {
  return std::min(1.0, mds_simplified_raw(ctx, v, t));
}

double f_beta(double e, double eprime, double beta) {
  if (!std::isfinite(e) || !std::isfinite(eprime) || !std::isfinite(beta))
    throw std::invalid_argument("f_beta: non-finite input");
  const double u = 0.25 * beta * (eprime - e);
  const double prefactor = std::exp(-0.25 * beta * (e + eprime));
  double ratio;
  if (std::abs(2.0 * u) < 1e-6) {
    const double u2 = u * u;
    ratio = 1.0 + u2 / 6.0 + u2 * u2 / 120.0;
  } else {
    ratio = std::sinh(u) / u;
  }
  return prefactor * ratio;
}

// ---------------------------------------------------------------------------
// Bound report
// ---------------------------------------------------------------------------

BoundReport bound_report(const ThermalContext& ctx, const DriveSchedule& schedule,
                         const std::vector<double>& times, const BoundReportOptions& options) {
  if (schedule.kind() != DriveSchedule::Kind::constant)
    throw std::invalid_argument(
        "bound_report: quench reports take a constant schedule (driven bounds are available "
        "through tqsl_general)");
  const HermitianOperator& v = schedule.values().front();
  require_dim(ctx, v, "bound_report");
  for (std::size_t i = 0; i < times.size(); ++i) {
    require_time(times[i], "bound_report");
    if (i > 0 && times[i] < times[i - 1])
      throw std::invalid_argument("bound_report: times must be ascending");
  }

  // Shared scalar ingredients, computed once per report.
  const double comm_avg = commutator_average(ctx, v);
  Matrix h_mat = ctx.h0.mat() + v.mat();
  const HermitianOperator h(h_mat, kHermTolDerived);
  const double mean_e = trace_product(h_mat, ctx.rho0.mat());
  Matrix h_centered = h_mat;
  h_centered.diagonal().array() -= mean_e;
  const double sigma_e = std::sqrt(quadratic_average(h_centered, ctx.sqrt_rho0.mat()));
  const double e_gs = ctx.e_gs ? *ctx.e_gs : ground_energy(h_mat);
  const double ebar = checked_ebar(mean_e, e_gs, "bound_report");
  const double i_wy = skew_information(ctx, v);
  const double v2 = quadratic_average(v.mat(), ctx.sqrt_rho0.mat());

  // One evolution pass in the eigenframe of H0+V, carrying rho0 and
  // sqrt(rho0) through the same phases.
  const SpectralDecomposition sd = spectral_decompose(h);
  const Matrix& q = sd.eigenvectors;
  const Matrix rho_frame = q.adjoint() * ctx.rho0.mat() * q;
  const Matrix sqrt_frame = q.adjoint() * ctx.sqrt_rho0.mat() * q;
  const Matrix& s0 = ctx.sqrt_rho0.mat();
  const auto n = static_cast<std::size_t>(ctx.h0.dim());

  BoundReport report;
  report.times = times;
  report.model_id = options.model_id;
  report.parameters = options.parameters;
  report.seed = options.seed;

  auto enforce = [&](bool ok, const char* name, double bound_value, double actual_value,
                     double t) {
    if (ok) return;
    std::ostringstream ss;
    ss.precision(17);
    ss << "bound_report: certification violation in model '" << report.model_id << "': " << name
       << " = " << bound_value << " fails to dominate actual " << actual_value << " at t = " << t;
    throw std::runtime_error(ss.str());
  };

  std::vector<cxd> phases(n);
  Matrix mixed(ctx.h0.dim(), ctx.h0.dim());
  for (double t : times) {
    double actual_tr = 0.0;
    double actual_bures = 0.0;
    double fidelity = 1.0;
    if (t > 0.0) {
      for (std::size_t i = 0; i < n; ++i)
        phases[i] = std::exp(cxd{0.0, -1.0} *
                             (sd.eigenvalues[static_cast<Eigen::Index>(i)] * t));
      kernels::phase_mix(mixed.data(), rho_frame.data(), phases.data(), n);
      const Matrix rho_t = q * mixed * q.adjoint();
      kernels::phase_mix(mixed.data(), sqrt_frame.data(), phases.data(), n);
      const Matrix s_t = q * mixed * q.adjoint();

      actual_tr = trace_distance(ctx.rho0, DensityMatrix::trusted(rho_t));
      fidelity = std::clamp(fidelity_from_sqrts(s0, s_t), 0.0, 1.0);
      actual_bures = std::acos(fidelity);
    }
    report.actual_trace_distance.push_back(actual_tr);
    report.actual_bures_angle.push_back(actual_bures);

    const double tqsl_raw = tqsl_raw_from_average(ctx.beta, t, comm_avg);
    const double tqsl_clamped = std::min(1.0, tqsl_raw);
    report.tqsl_trace.raw.push_back(tqsl_raw);
    report.tqsl_trace.clamped.push_back(tqsl_clamped);

    const double bures_clamped = std::asin(std::min(1.0, tqsl_raw));
    report.tqsl_bures.raw.push_back(tqsl_raw);
    report.tqsl_bures.clamped.push_back(bures_clamped);

    const double mt_raw = sigma_e * t;
    report.mt.raw.push_back(mt_raw);
    report.mt.clamped.push_back(std::min(1.0, mt_raw));

    const double ml_raw = ml_raw_from_ebar(ebar, t);
    report.ml.raw.push_back(ml_raw);
    report.ml.clamped.push_back(std::min(1.0, ml_raw));

    const MdsOriginal mds = mds_from_skew(i_wy, t);
    report.mds_original_trace.raw.push_back(mds.trace_bound);
    report.mds_original_trace.clamped.push_back(mds.trace_bound);
    report.mds_d_bound.push_back(mds.d_bound);
    report.mds_domain_ok.push_back(mds.domain_ok);

    const double simpl_raw = mds_simplified_raw_from_v2(v2, t);
    report.mds_simplified.raw.push_back(simpl_raw);
    report.mds_simplified.clamped.push_back(std::min(1.0, simpl_raw));

    // Certification invariant: every bound dominates its actual within 1e-9.
    const double slack = 1e-9;
    enforce(tqsl_clamped >= actual_tr - slack, "tqsl_trace", tqsl_clamped, actual_tr, t);
    enforce(std::min(1.0, mt_raw) >= actual_tr - slack, "mt", std::min(1.0, mt_raw), actual_tr, t);
    enforce(std::min(1.0, ml_raw) >= actual_tr - slack, "ml", std::min(1.0, ml_raw), actual_tr, t);
    enforce(mds.trace_bound >= actual_tr - slack, "mds_original_trace", mds.trace_bound,
            actual_tr, t);
    enforce(std::min(1.0, simpl_raw) >= actual_tr - slack, "mds_simplified",
            std::min(1.0, simpl_raw), actual_tr, t);
    // Angle bounds are compared in the fidelity domain: cos is strictly
    // decreasing on [0, pi/2], so bound >= angle iff cos(bound) <= fidelity,
    // and the fidelity carries ~1e-15 error where the angle itself has a
    // sqrt(eps) noise floor near zero that an angle comparison would trip on.
    enforce(std::cos(bures_clamped) <= fidelity + slack, "tqsl_bures", bures_clamped,
            actual_bures, t);
    if (mds.domain_ok) {
      const double d_capped = std::min(1.0, mds.d_bound);
      // cos(audenaert_rhs(d)) = sqrt(1 - d(2-d)) = 1 - d
      enforce(1.0 - d_capped <= fidelity + slack, "mds_original_bures",
              audenaert_rhs(d_capped), actual_bures, t);
    }
  }
  return report;
}

}  // namespace tqsl
