#include <tqsl/evolution.hpp>

#include <tqsl/kernels.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace tqsl {

namespace {

constexpr cxd kMinusI{0.0, -1.0};

void require_times(const std::vector<double>& times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0))
      throw std::invalid_argument("evolution: times must be >= 0");
    if (i > 0 && times[i] < times[i - 1])
      throw std::invalid_argument("evolution: times must be ascending");
  }
}

void require_support(const DriveSchedule& schedule, double t_final) {
  if (t_final > schedule.end_time()) {
    std::ostringstream ss;
    ss << "evolution: requested time " << t_final << " exceeds schedule support "
       << schedule.end_time();
    throw std::invalid_argument(ss.str());
  }
}

// max_ij |(U^dagger U - I)(i,j)|
double unitarity_defect(const Matrix& u) {
  Matrix g = u.adjoint() * u;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff();
}

// e^{-iHt} from a spectral decomposition of H
Matrix step_unitary(const SpectralDecomposition& sd, double t) {
  const Eigen::Index d = sd.eigenvectors.rows();
  Matrix scaled = sd.eigenvectors;
  for (Eigen::Index k = 0; k < d; ++k)
    scaled.col(k) *= std::exp(kMinusI * (sd.eigenvalues[k] * t));
  return scaled * sd.eigenvectors.adjoint();
}

// Walks the schedule from 0 through ascending snapshot times, conjugating the
// carried matrices by each leg's unitaries.
class Walker {
 public:
  Walker(std::vector<Matrix> carried, const HermitianOperator& h0, const DriveSchedule& schedule,
         double dt_max)
      : carried_(std::move(carried)), h0_(h0), schedule_(schedule), dt_max_(dt_max) {
    if (!(dt_max_ > 0.0))
      throw std::invalid_argument("evolution: nonpositive dt_max");
    if (schedule_.dim() != h0_.dim())
      throw std::invalid_argument("evolution: schedule/Hamiltonian dimension mismatch");
    for (const Matrix& m : carried_)
      if (m.rows() != h0_.dim() || m.cols() != h0_.dim())
        throw std::invalid_argument("evolution: carried matrix dimension mismatch");
    plateau_decomps_.resize(schedule_.values().size());
  }

  void advance_to(double t) {
    if (t < t_cur_)
      throw std::invalid_argument("evolution: times must be ascending");
    switch (schedule_.kind()) {
      case DriveSchedule::Kind::constant:
      case DriveSchedule::Kind::piecewise:
        advance_exact(t);
        break;
      case DriveSchedule::Kind::sampled:
        advance_midpoint(t);
        break;
    }
    t_cur_ = t;
  }

  const std::vector<Matrix>& carried() const { return carried_; }
  long step_count() const { return step_count_; }
  double max_defect() const { return max_defect_; }

 private:
  // Segment-exact propagation: one eigendecomposition per plateau, reused.
  void advance_exact(double t) {
    const std::vector<double>& knots = schedule_.knots();
    double at = t_cur_;
    while (at < t) {
      std::size_t k = plateau_index(knots, at);
      double seg_end = (k + 1 < knots.size()) ? knots[k + 1] : schedule_.end_time();
      double leg_end = std::min(t, seg_end);
      if (leg_end > at) apply(step_unitary(plateau_decomp(k), leg_end - at));
      at = leg_end;
    }
  }

  // Midpoint rule with uniform steps across the leg; the staircase lookup
  // supplies H(t_mid). Steps are deliberately not aligned to the sample grid:
  // a grid much finer than dt stands in for a smooth ramp, and the midpoint
  // stepper's own O(dt^2) error is what Richardson halving measures.
  void advance_midpoint(double t) {
    double span = t - t_cur_;
    if (span <= 0.0) return;
    long n = static_cast<long>(std::ceil(span / dt_max_));
    double dt = span / static_cast<double>(n);
    for (long k = 0; k < n; ++k) {
      double t_mid = t_cur_ + (static_cast<double>(k) + 0.5) * dt;
      HermitianOperator h(h0_.mat() + schedule_.value(t_mid).mat(), kHermTolDerived);
      apply(step_unitary(spectral_decompose(h), dt));
    }
  }

  static std::size_t plateau_index(const std::vector<double>& knots, double t) {
    auto it = std::upper_bound(knots.begin(), knots.end(), t);
    return static_cast<std::size_t>(it - knots.begin()) - 1;
  }

  const SpectralDecomposition& plateau_decomp(std::size_t k) {
    if (!plateau_decomps_[k]) {
      HermitianOperator h(h0_.mat() + schedule_.values()[k].mat(), kHermTolDerived);
      plateau_decomps_[k] = spectral_decompose(h);
    }
    return *plateau_decomps_[k];
  }

  void apply(const Matrix& u) {
    max_defect_ = std::max(max_defect_, unitarity_defect(u));
    for (Matrix& m : carried_) m = u * m * u.adjoint();
    ++step_count_;
  }

  std::vector<Matrix> carried_;
  const HermitianOperator& h0_;
  const DriveSchedule& schedule_;
  double dt_max_;
  double t_cur_ = 0.0;
  long step_count_ = 0;
  double max_defect_ = 0.0;
  std::vector<std::optional<SpectralDecomposition>> plateau_decomps_;
};

void enforce_defect(double defect) {
  if (!(defect < 1e-9)) {
    std::ostringstream ss;
    ss.precision(3);
    ss << std::scientific << "evolution: unitarity defect " << defect << " exceeds 1e-9";
    throw std::runtime_error(ss.str());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// DriveSchedule
// ---------------------------------------------------------------------------

DriveSchedule::DriveSchedule(Kind kind, std::vector<double> knots,
                             std::vector<HermitianOperator> values, double end)
    : kind_(kind), knots_(std::move(knots)), values_(std::move(values)), end_(end) {}

DriveSchedule DriveSchedule::constant(HermitianOperator v) {
  std::vector<HermitianOperator> values;
  values.push_back(std::move(v));
  return DriveSchedule(Kind::constant, {0.0}, std::move(values),
                       std::numeric_limits<double>::infinity());
}

DriveSchedule DriveSchedule::piecewise(
    std::vector<std::pair<double, HermitianOperator>> segments) {
  if (segments.empty())
    throw std::invalid_argument("DriveSchedule: piecewise schedule needs at least one segment");
  std::vector<double> knots;
  std::vector<HermitianOperator> values;
  double at = 0.0;
  const int dim0 = segments.front().second.dim();
  for (auto& [duration, v] : segments) {
    if (!(duration > 0.0) || !std::isfinite(duration))
      throw std::invalid_argument("DriveSchedule: segment durations must be positive and finite");
    if (v.dim() != dim0)
      throw std::invalid_argument("DriveSchedule: segment operators must share one dimension");
    knots.push_back(at);
    values.push_back(std::move(v));
    at += duration;
  }
  return DriveSchedule(Kind::piecewise, std::move(knots), std::move(values), at);
}

DriveSchedule DriveSchedule::sampled(std::vector<double> grid,
                                     std::vector<HermitianOperator> samples) {
  if (grid.empty() || grid.size() != samples.size())
    throw std::invalid_argument("DriveSchedule: sampled grid and samples must match and be nonempty");
  if (grid.front() != 0.0)
    throw std::invalid_argument("DriveSchedule: sampled grid must start at t = 0");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || (i > 0 && grid[i] <= grid[i - 1]))
      throw std::invalid_argument("DriveSchedule: sampled grid must be strictly increasing");
    if (samples[i].dim() != samples.front().dim())
      throw std::invalid_argument("DriveSchedule: sample operators must share one dimension");
  }
  const double end = grid.back();
  return DriveSchedule(Kind::sampled, std::move(grid), std::move(samples), end);
}

const HermitianOperator& DriveSchedule::value(double t) const {
  if (!(t >= 0.0))
    throw std::invalid_argument("DriveSchedule: time must be >= 0");
  if (t > end_) {
    std::ostringstream ss;
    ss << "DriveSchedule: time " << t << " outside support [0, " << end_ << "]";
    throw std::invalid_argument(ss.str());
  }
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  return values_[static_cast<std::size_t>(it - knots_.begin()) - 1];
}

std::vector<double> DriveSchedule::hard_discontinuities() const {
  if (kind_ != Kind::piecewise) return {};
  return {knots_.begin() + 1, knots_.end()};
}

// ---------------------------------------------------------------------------
// Evolution
// ---------------------------------------------------------------------------

TransportResult transport_conjugation(std::vector<Matrix> initial, const HermitianOperator& h0,
                                      const DriveSchedule& schedule,
                                      const std::vector<double>& times, double dt_max) {
  require_times(times);
  if (!times.empty()) require_support(schedule, times.back());
  Walker walker(std::move(initial), h0, schedule, dt_max);
  TransportResult result;
  result.times = times;
  result.snapshots.reserve(times.size());
  for (double t : times) {
    walker.advance_to(t);
    result.snapshots.push_back(walker.carried());
  }
  result.step_count = walker.step_count();
  result.max_unitarity_defect = walker.max_defect();
  enforce_defect(result.max_unitarity_defect);
  return result;
}

EvolutionResult evolve_const(const DensityMatrix& rho0, const HermitianOperator& h,
                             const std::vector<double>& times) {
  if (rho0.dim() != h.dim())
    throw std::invalid_argument("evolve_const: state/Hamiltonian dimension mismatch");
  require_times(times);

  const SpectralDecomposition sd = spectral_decompose(h);
  const Matrix& q = sd.eigenvectors;
  const auto n = static_cast<std::size_t>(h.dim());

  EvolutionResult result;
  result.times = times;
  result.states.reserve(times.size());
  result.max_unitarity_defect = unitarity_defect(q);

  // Phase frame: rotate once, propagate by elementwise phases, rotate back.
  const Matrix rho_frame = q.adjoint() * rho0.mat() * q;
  std::vector<cxd> phases(n);
  Matrix mixed(h.dim(), h.dim());
  for (double t : times) {
    if (t == 0.0) {
      result.states.push_back(rho0);
      ++result.step_count;
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      phases[i] = std::exp(kMinusI * (sd.eigenvalues[static_cast<Eigen::Index>(i)] * t));
      result.max_unitarity_defect =
          std::max(result.max_unitarity_defect, std::abs(std::norm(phases[i]) - 1.0));
    }
    kernels::phase_mix(mixed.data(), rho_frame.data(), phases.data(), n);
    result.states.push_back(DensityMatrix::trusted(q * mixed * q.adjoint()));
    ++result.step_count;
  }
  enforce_defect(result.max_unitarity_defect);
  return result;
}

EvolutionResult evolve_driven(const DensityMatrix& rho0, const HermitianOperator& h0,
                              const DriveSchedule& schedule, const std::vector<double>& times,
                              double dt_max) {
  if (rho0.dim() != h0.dim())
    throw std::invalid_argument("evolve_driven: state/Hamiltonian dimension mismatch");
  if (!(dt_max > 0.0)) throw std::invalid_argument("evolve_driven: nonpositive dt_max");

  if (schedule.kind() == DriveSchedule::Kind::constant) {
    HermitianOperator h(h0.mat() + schedule.values().front().mat(), kHermTolDerived);
    return evolve_const(rho0, h, times);
  }

  TransportResult transported =
      transport_conjugation({rho0.mat()}, h0, schedule, times, dt_max);
  EvolutionResult result;
  result.times = std::move(transported.times);
  result.step_count = transported.step_count;
  result.max_unitarity_defect = transported.max_unitarity_defect;
  result.states.reserve(transported.snapshots.size());
  for (auto& snap : transported.snapshots)
    result.states.push_back(DensityMatrix::trusted(std::move(snap[0])));
  return result;
}

double sqrt_evolution_check(const DensityMatrix& rho0, const HermitianOperator& h0,
                            const DriveSchedule& schedule, double t, double dt_max) {
  if (rho0.dim() != h0.dim())
    throw std::invalid_argument("sqrt_evolution_check: dimension mismatch");
  const Matrix s0 = psd_sqrt(rho0.op()).mat();
  TransportResult transported =
      transport_conjugation({rho0.mat(), s0}, h0, schedule, {t}, dt_max);
  const Matrix& rho_t = transported.snapshots[0][0];
  const Matrix squared = transported.snapshots[0][1] * transported.snapshots[0][1];
  return kernels::max_abs_diff(squared.data(), rho_t.data(),
                               static_cast<std::size_t>(squared.size()));
}

DtDCheck dtD_identity_check(const DensityMatrix& rho0, const HermitianOperator& h0,
                            const DriveSchedule& schedule, double t, double dt_fd,
                            double dt_max) {
  if (rho0.dim() != h0.dim())
    throw std::invalid_argument("dtD_identity_check: dimension mismatch");
  if (!(dt_fd > 0.0)) throw std::invalid_argument("dtD_identity_check: dt_fd must be positive");
  if (!(t - dt_fd >= 0.0) || !(t + dt_fd <= schedule.end_time()))
    throw std::invalid_argument("dtD_identity_check: stencil leaves schedule support");
  for (double b : schedule.hard_discontinuities())
    if (std::abs(b - t) <= dt_fd) {
      std::ostringstream ss;
      ss << "dtD_identity_check: derivative undefined, schedule discontinuity at t = " << b
         << " within the stencil of t = " << t;
      throw std::invalid_argument(ss.str());
    }

  const Matrix s0 = psd_sqrt(rho0.op()).mat();
  TransportResult transported =
      transport_conjugation({s0}, h0, schedule, {t - dt_fd, t, t + dt_fd}, dt_max);
  const auto n = static_cast<std::size_t>(s0.size());

  // D(tau) = 1 - tr(sqrt(rho0) sqrt(rho_tau)); sqrt(rho_tau) is the
  // transported sqrt(rho0), so only inner products remain.
  auto d_measure_at = [&](const Matrix& s_tau) {
    return 1.0 - kernels::conj_dot(s0.data(), s_tau.data(), n).real();
  };
  const double lhs = (d_measure_at(transported.snapshots[2][0]) -
                      d_measure_at(transported.snapshots[0][0])) /
                     (2.0 * dt_fd);

  const Matrix k = commutator(s0, schedule.value(t).mat());
  const Matrix& s_t = transported.snapshots[1][0];
  // tr(K s_t) with s_t Hermitian equals conj_dot(s_t, K)
  const cxd rhs_full = cxd{0.0, 1.0} * kernels::conj_dot(s_t.data(), k.data(), n);
  if (std::abs(rhs_full.imag()) >= 1e-9) {
    std::ostringstream ss;
    ss.precision(3);
    ss << std::scientific << "dtD_identity_check: imaginary part " << rhs_full.imag()
       << " of i tr([sqrt(rho0), V_t] sqrt(rho_t)) exceeds 1e-9";
    throw std::runtime_error(ss.str());
  }
  return {lhs, rhs_full.real()};
}

}  // namespace tqsl
