#include <tqsl/models.hpp>

#include <tqsl/bounds.hpp>
#include <tqsl/errors.hpp>
#include <tqsl/rng.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tqsl::models {

namespace {

void validate_spin_boson(const SpinBosonParams& p) {
  if (p.n_modes < 1)
    throw std::invalid_argument("spin_boson: n_modes must be >= 1");
  if (p.cutoff < 2)
    throw std::invalid_argument("spin_boson: cutoff must be >= 2");
  if (p.g.size() != static_cast<std::size_t>(p.n_modes) ||
      p.omega.size() != static_cast<std::size_t>(p.n_modes))
    throw std::invalid_argument("spin_boson: g and omega must have one entry per mode");
}

CompositeSpace spin_boson_space(const SpinBosonParams& p, int dim_cap) {
  std::vector<int> dims(static_cast<std::size_t>(p.n_modes) + 1, p.cutoff);
  dims[0] = 2;
  return CompositeSpace(std::move(dims), dim_cap);
}

void validate_impurity(const ImpurityLatticeParams& p, int dim_cap) {
  if (p.n_sites < 2)
    throw std::invalid_argument("impurity: n_sites must be >= 2");
  if (!(p.hopping > 0.0))
    throw std::invalid_argument("impurity: hopping must be positive");
  if (!(p.force >= 0.0))
    throw std::invalid_argument("impurity: force must be >= 0 (magnitude convention)");
  if (p.n_sites > dim_cap) {
    std::ostringstream ss;
    ss << "impurity: dimension " << p.n_sites << " exceeds cap " << dim_cap;
    throw ResourceError(ss.str());
  }
}

// -(i/2) sum_x (|x><x+1| - |x+1><x|): central-difference lattice momentum
Matrix lattice_momentum(int l) {
  Matrix p = Matrix::Zero(l, l);
  const cxd half_i{0.0, 0.5};
  for (int x = 0; x + 1 < l; ++x) {
    p(x, x + 1) = -half_i;
    p(x + 1, x) = half_i;
  }
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// Spin-boson
// ---------------------------------------------------------------------------

SpinBosonParams sampled_spin_boson_params(int n_modes, int cutoff, std::uint64_t seed,
                                          double omega_spin,
                                          std::pair<double, double> omega_range,
                                          std::pair<double, double> g_range) {
  SpinBosonParams p{n_modes, cutoff, omega_spin, {}, {}};
  p.g.reserve(static_cast<std::size_t>(n_modes));
  p.omega.reserve(static_cast<std::size_t>(n_modes));
  for (int k = 0; k < n_modes; ++k) {
    // One generator per mode, keyed by (seed, k): mode parameters never
    // depend on how many modes the sweep eventually asks for.
    Rng rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(k + 1));
    p.omega.push_back(rng.uniform(omega_range.first, omega_range.second));
    p.g.push_back(rng.uniform(g_range.first, g_range.second));
  }
  return p;
}

HermitianOperator build_spin_boson(const SpinBosonParams& p, int dim_cap) {
  validate_spin_boson(p);
  const CompositeSpace space = spin_boson_space(p, dim_cap);
  const int d = space.dim();
  const double root_n = std::sqrt(static_cast<double>(p.n_modes));

  Matrix h = p.omega_spin * embed_op(sigma_z(), space, 0);

  const Matrix a = ladder(p.cutoff);
  const Matrix quadrature = a + a.adjoint();  // a + a^dag
  Matrix coupling = Matrix::Zero(d, d);
  for (int k = 0; k < p.n_modes; ++k)
    coupling += (p.g[static_cast<std::size_t>(k)] / root_n) *
                embed_op(quadrature, space, k + 1);
  h += embed_op(sigma_x(), space, 0) * coupling;

  const Matrix n_op = number_op(p.cutoff);
  for (int k = 0; k < p.n_modes; ++k)
    h += p.omega[static_cast<std::size_t>(k)] * embed_op(n_op, space, k + 1);

  return HermitianOperator(std::move(h));
}

HermitianOperator spin_boson_perturbation(const SpinBosonParams& p, PerturbationKind kind,
                                          double strength, int dim_cap) {
  validate_spin_boson(p);
  const CompositeSpace space = spin_boson_space(p, dim_cap);
  switch (kind) {
    case PerturbationKind::local_sigma_x:
      return HermitianOperator(strength * embed_op(sigma_x(), space, 0));
    case PerturbationKind::mode_shift: {
      const Matrix n_op = number_op(p.cutoff);
      Matrix v = Matrix::Zero(space.dim(), space.dim());
      for (int k = 0; k < p.n_modes; ++k) v += embed_op(n_op, space, k + 1);
      return HermitianOperator(strength * v);
    }
    case PerturbationKind::trivial:
      (void)strength;
      return HermitianOperator(Matrix::Zero(space.dim(), space.dim()));
  }
  throw std::invalid_argument("spin_boson_perturbation: unknown kind");
}

double bose_einstein_occupation(double beta, double omega) {
  const double x = beta * omega;
  if (!(x > 0.0))
    throw std::invalid_argument("bose_einstein_occupation: beta*omega must be positive");
  return 1.0 / std::expm1(x);
}

double truncated_occupation(double beta, double omega, int cutoff) {
  if (cutoff < 2)
    throw std::invalid_argument("truncated_occupation: cutoff must be >= 2");
  double z = 0.0;
  double acc = 0.0;
  for (int n = 0; n < cutoff; ++n) {
    const double w = std::exp(-beta * omega * static_cast<double>(n));
    z += w;
    acc += static_cast<double>(n) * w;
  }
  return acc / z;
}

double spin_boson_analytic_tqsl(const SpinBosonParams& p, PerturbationKind kind, double strength,
                                double beta, double t, OccupationMode mode) {
  validate_spin_boson(p);
  if (!(beta >= 0.0) || !(t >= 0.0))
    throw std::invalid_argument("spin_boson_analytic_tqsl: beta and t must be >= 0");
  switch (kind) {
    case PerturbationKind::local_sigma_x:
      return std::min(1.0, std::sqrt(2.0 * std::sqrt(2.0) * strength * p.omega_spin * beta * t));
    case PerturbationKind::mode_shift: {
      if (beta * t == 0.0) return 0.0;
      double g2_sum = 0.0;
      double g2n_sum = 0.0;
      for (int k = 0; k < p.n_modes; ++k) {
        const double g2 = p.g[static_cast<std::size_t>(k)] * p.g[static_cast<std::size_t>(k)];
        const double nbar = (mode == OccupationMode::ideal)
                                ? bose_einstein_occupation(beta, p.omega[static_cast<std::size_t>(k)])
                                : truncated_occupation(beta, p.omega[static_cast<std::size_t>(k)],
                                                       p.cutoff);
        g2_sum += g2;
        g2n_sum += g2 * nbar;
      }
      if (g2_sum == 0.0) return 0.0;
      const double g_tilde = std::sqrt(g2_sum / static_cast<double>(p.n_modes));
      const double n_tilde = g2n_sum / g2_sum;
      return std::min(1.0, std::sqrt(strength * g_tilde * beta * t) *
                               std::pow(2.0 * (1.0 + 2.0 * n_tilde), 0.25));
    }
    case PerturbationKind::trivial:
      return 0.0;
  }
  throw std::invalid_argument("spin_boson_analytic_tqsl: unknown kind");
}

// ---------------------------------------------------------------------------
// Mobile impurity
// ---------------------------------------------------------------------------

ImpurityOperators build_impurity(const ImpurityLatticeParams& p, int dim_cap) {
  validate_impurity(p, dim_cap);
  const int l = p.n_sites;

  Matrix kinetic = 2.0 * p.hopping * identity(l);
  for (int x = 0; x + 1 < l; ++x) {
    kinetic(x, x + 1) = -p.hopping;
    kinetic(x + 1, x) = -p.hopping;
  }

  Matrix position = Matrix::Zero(l, l);
  for (int x = 0; x < l; ++x) position(x, x) = static_cast<double>(x);

  const Matrix momentum = lattice_momentum(l);

  return ImpurityOperators{HermitianOperator(std::move(kinetic)),
                           HermitianOperator(p.force * position),
                           HermitianOperator(momentum * momentum, kHermTolDerived)};
}

double impurity_analytic_tqsl(const ImpurityLatticeParams& p, double beta, double t) {
  if (!(beta >= 0.0) || !(t >= 0.0))
    throw std::invalid_argument("impurity_analytic_tqsl: beta and t must be >= 0");
  const ImpurityOperators ops = build_impurity(p);
  const ThermalContext ctx = thermal_state(ops.h0, beta);
  const double p2_avg = expectation(ctx.rho0, ops.p2).real();
  const double m = impurity_mass(p);
  return std::min(1.0, std::sqrt(beta * t) *
                           std::sqrt((p.force / m) * std::sqrt(2.0 * p2_avg)));
}

// ---------------------------------------------------------------------------
// Random spin chain
// ---------------------------------------------------------------------------

SpinChainOperators build_spin_chain(const SpinChainParams& p, int dim_cap) {
  if (p.n_sites < 2)
    throw std::invalid_argument("spin_chain: n_sites must be >= 2");
  if (!(p.j_min <= p.j_max))
    throw std::invalid_argument("spin_chain: coupling range is empty");
  std::vector<int> dims(static_cast<std::size_t>(p.n_sites), 2);
  const CompositeSpace space(std::move(dims), dim_cap);
  const int d = space.dim();

  Rng rng(p.seed);
  const Matrix paulis[3] = {sigma_x(), sigma_y(), sigma_z()};

  // Nearest-neighbor two-body terms with seeded coefficients.
  Matrix h = Matrix::Zero(d, d);
  for (int site = 0; site + 1 < p.n_sites; ++site)
    for (const Matrix& pa : paulis)
      for (const Matrix& pb : paulis)
        h += rng.uniform(p.j_min, p.j_max) *
             (embed_op(pa, space, site) * embed_op(pb, space, site + 1));

  const HermitianOperator v_site = random_hermitian(2, rng);
  Matrix v_local = embed_op(v_site.mat(), space, 0);

  Matrix v_nonlocal = Matrix::Zero(d, d);
  for (int site = 0; site < p.n_sites; ++site)
    v_nonlocal += embed_op(random_hermitian(2, rng).mat(), space, site);

  return SpinChainOperators{HermitianOperator(std::move(h)),
                            HermitianOperator(std::move(v_local)),
                            HermitianOperator(std::move(v_nonlocal))};
}

}  // namespace tqsl::models
