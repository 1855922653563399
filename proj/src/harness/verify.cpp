#include "tqsl/harness/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tqsl/bounds.hpp"
#include "tqsl/distances.hpp"
#include "tqsl/evolution.hpp"
#include "tqsl/kernels.hpp"
#include "tqsl/rng.hpp"

namespace tqsl::harness {

namespace {

constexpr double kChainSlack = 1e-10;     // distance-chain / skew / contractivity
constexpr double kGridSlack = 1e-12;      // f_beta lemma
constexpr double kCertSlack = 1e-9;       // certification battery
constexpr double kSqrtDefectCap = 1e-8;   // transported-sqrt consistency
constexpr std::size_t kMaxMessages = 8;

// Accumulates one suite: every inequality records its slack (margin by which
// it held); a slack below the suite tolerance marks the case failed.
struct Suite {
  explicit Suite(std::string name) {
    result.suite = std::move(name);
    result.worst_slack = std::numeric_limits<double>::infinity();
  }

  void begin_case() {
    ++result.cases;
    case_failed_ = false;
  }

  void check(double slack, double tol, const std::string& message) {
    result.worst_slack = std::min(result.worst_slack, slack);
    if (slack >= -tol) return;
    fail(message + ": slack = " + std::to_string(slack));
  }

  void fail(const std::string& message) {
    if (!case_failed_) {
      case_failed_ = true;
      ++result.failures;
    }
    if (result.messages.size() < kMaxMessages) result.messages.push_back(message);
  }

  SuiteResult result;

 private:
  bool case_failed_ = false;
};

std::string case_tag(const char* what, int index) {
  return std::string(what) + " case " + std::to_string(index);
}

// beta in (0, hi]: excludes the fieldless beta = 0 point, which has its own
// dedicated tests elsewhere.
double positive_beta(Rng& rng, double hi) { return hi - hi * rng.uniform(); }

SuiteResult distance_chain_suite(std::uint64_t seed, bool inject_failure) {
  Suite suite("distance_chain");
  Rng rng(seed + 101);
  for (int i = 0; i < 200; ++i) {
    suite.begin_case();
    const int dim = rng.integer(2, 10);
    const DensityMatrix rho1 = random_density(dim, rng.integer(1, dim), rng);
    const DensityMatrix rho2 = random_density(dim, rng.integer(1, dim), rng);

    const double d = d_measure(rho1, rho2);
    const double t_dist = trace_distance(rho1, rho2);
    const double angle = bures_angle(rho1, rho2);
    const double loose = std::sqrt(2.0 * d);

    double tight_trace_slack = holevo_rhs(d) - t_dist;
    if (inject_failure && i == 0) {
      // Self-test hook: negate the first inequality so the failure path
      // (counting, message, nonzero exit) is exercised end to end.
      tight_trace_slack = -tight_trace_slack - 1.0;
      suite.check(tight_trace_slack, kChainSlack,
                  case_tag("distance_chain", i) + ": injected violation (self-test)");
    } else {
      suite.check(tight_trace_slack, kChainSlack,
                  case_tag("distance_chain", i) + ": trace distance above sqrt(D(2-D))");
    }
    suite.check(loose - t_dist, kChainSlack,
                case_tag("distance_chain", i) + ": trace distance above sqrt(2D)");
    suite.check(audenaert_rhs(d) - angle, kChainSlack,
                case_tag("distance_chain", i) + ": Bures angle above arcsin sqrt(D(2-D))");
    suite.check(loose - std::sin(angle), kChainSlack,
                case_tag("distance_chain", i) + ": sin(Bures angle) above sqrt(2D)");
  }
  return suite.result;
}

SuiteResult wy_reduction_suite(std::uint64_t seed) {
  Suite suite("wy_reduction");
  Rng rng(seed + 202);
  for (int i = 0; i < 200; ++i) {
    suite.begin_case();
    const int dim = rng.integer(2, 10);
    const double beta = positive_beta(rng, 5.0);
    const HermitianOperator h0 = random_hermitian(dim, rng);
    const HermitianOperator v = random_hermitian(dim, rng);
    const ThermalContext ctx = thermal_state(h0, beta);

    const double skew = wy_skew_information(ctx.rho0, v);
    const Matrix m = v.mat() * ctx.sqrt_rho0.mat();
    const double v2 =
        kernels::conj_dot(m.data(), m.data(), static_cast<std::size_t>(m.size())).real();
    suite.check(2.0 * v2 - skew, kChainSlack,
                case_tag("wy_reduction", i) + ": skew information above 2<V^2>");
  }
  return suite.result;
}

SuiteResult f_beta_lemma_suite(std::uint64_t) {
  Suite suite("f_beta_lemma");
  for (int k = 0; k <= 10; ++k) {
    const double beta = 0.1 + (5.0 - 0.1) * static_cast<double>(k) / 10.0;
    for (int i = 0; i <= 60; ++i) {
      const double e = -6.0 + 12.0 * static_cast<double>(i) / 60.0;
      for (int j = 0; j <= 60; ++j) {
        const double eprime = -6.0 + 12.0 * static_cast<double>(j) / 60.0;
        suite.begin_case();
        const double f = f_beta(e, eprime, beta);
        const double rhs = std::exp(-beta * e) + std::exp(-beta * eprime);
        suite.check(rhs - f * f, kGridSlack,
                    "f_beta_lemma: f^2 above e^{-bE} + e^{-bE'} at (E, E', beta) = (" +
                        std::to_string(e) + ", " + std::to_string(eprime) + ", " +
                        std::to_string(beta) + ")");
      }
    }
  }
  return suite.result;
}

SuiteResult contractivity_suite(std::uint64_t seed) {
  Suite suite("contractivity");
  Rng rng(seed + 404);
  for (int i = 0; i < 100; ++i) {
    suite.begin_case();
    const int dim_a = rng.integer(2, 4);
    const int dim_b = rng.integer(2, 4);
    const int joint = dim_a * dim_b;
    const DensityMatrix rho1 = random_density(joint, rng.integer(1, joint), rng);
    const DensityMatrix rho2 = random_density(joint, rng.integer(1, joint), rng);
    const CompositeSpace space({dim_a, dim_b});
    const DensityMatrix red1 = partial_trace(rho1, space, {0});
    const DensityMatrix red2 = partial_trace(rho2, space, {0});
    suite.check(trace_distance(rho1, rho2) - trace_distance(red1, red2), kChainSlack,
                case_tag("contractivity", i) + ": partial trace increased trace distance");
  }
  return suite.result;
}

SuiteResult certification_battery_suite(std::uint64_t seed) {
  Suite suite("certification_battery");
  Rng rng(seed + 505);
  std::vector<double> times(20);
  for (int i = 0; i < 20; ++i) times[i] = 0.1 + 1.9 * static_cast<double>(i) / 19.0;

  for (int i = 0; i < 200; ++i) {
    suite.begin_case();
    const int dim = rng.integer(2, 10);
    const double beta = positive_beta(rng, 5.0);
    const HermitianOperator h0 = random_hermitian(dim, rng);
    const HermitianOperator v = random_hermitian(dim, rng);
    try {
      const ThermalContext ctx = thermal_state(h0, beta);
      BoundReportOptions options;
      options.model_id = "battery";
      options.seed = seed;
      const BoundReport report =
          bound_report(ctx, DriveSchedule::constant(v), times, options);
      for (std::size_t k = 0; k < report.times.size(); ++k) {
        const double d = report.actual_trace_distance[k];
        const double angle = report.actual_bures_angle[k];
        const std::string tag = case_tag("certification_battery", i) + ", t = " +
                                std::to_string(report.times[k]);
        suite.check(report.tqsl_trace.clamped[k] - d, kCertSlack, tag + ": tqsl below D_tr");
        suite.check(report.mt.clamped[k] - d, kCertSlack, tag + ": mt below D_tr");
        suite.check(report.ml.clamped[k] - d, kCertSlack, tag + ": ml below D_tr");
        suite.check(report.mds_simplified.clamped[k] - d, kCertSlack,
                    tag + ": mds_simplified below D_tr");
        suite.check(report.tqsl_bures.clamped[k] - angle, kCertSlack,
                    tag + ": tqsl_bures below Bures angle");
        if (report.mds_domain_ok[k]) {
          suite.check(report.mds_original_trace.clamped[k] - d, kCertSlack,
                      tag + ": mds_original below D_tr");
          suite.check(audenaert_rhs(std::min(1.0, report.mds_d_bound[k])) - angle, kCertSlack,
                      tag + ": mds_original (Bures form) below Bures angle");
        }
      }
    } catch (const std::exception& e) {
      suite.fail(case_tag("certification_battery", i) + ": " + e.what());
    }
  }
  return suite.result;
}

SuiteResult evolution_consistency_suite(std::uint64_t seed) {
  Suite suite("evolution_consistency");
  Rng rng(seed + 606);
  for (int i = 0; i < 10; ++i) {
    suite.begin_case();
    const int dim = rng.integer(2, 6);
    const double beta = rng.uniform(0.2, 2.0);
    const HermitianOperator h0 = random_hermitian(dim, rng);
    const HermitianOperator v = random_hermitian(dim, rng);
    try {
      const ThermalContext ctx = thermal_state(h0, beta);
      const DriveSchedule schedule = DriveSchedule::constant(v);

      const double defect = sqrt_evolution_check(ctx.rho0, h0, schedule, 1.0);
      suite.check(kSqrtDefectCap - defect, 0.0,
                  case_tag("evolution_consistency", i) + ": sqrt transport defect above 1e-8");

      const double t = 0.5;
      const DtDCheck coarse = dtD_identity_check(ctx.rho0, h0, schedule, t, 2e-3);
      const DtDCheck fine = dtD_identity_check(ctx.rho0, h0, schedule, t, 1e-3);
      const double e_coarse = std::abs(coarse.lhs - coarse.rhs);
      const double e_fine = std::abs(fine.lhs - fine.rhs);
      // The ratio test needs the coarse error to sit above rounding noise;
      // below that the identity already holds to working precision.
      if (e_coarse >= 1e-9) {
        const double ratio = e_coarse / e_fine;
        suite.check(0.5 - std::abs(ratio - 4.0), 0.0,
                    case_tag("evolution_consistency", i) +
                        ": finite-difference error ratio " + std::to_string(ratio) +
                        " outside 4 +/- 0.5");
      }
    } catch (const std::exception& e) {
      suite.fail(case_tag("evolution_consistency", i) + ": " + e.what());
    }
  }
  return suite.result;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {
      "distance_chain",       "wy_reduction",          "f_beta_lemma",
      "contractivity",        "certification_battery", "evolution_consistency"};
  return names;
}

VerifyReport run_verify(const VerifyOptions& options) {
  const std::vector<std::string>& names = verify_suite_names();
  if (options.suite != "all" &&
      std::find(names.begin(), names.end(), options.suite) == names.end()) {
    std::string known = "all";
    for (const std::string& name : names) known += ", " + name;
    throw ConfigError("unknown suite '" + options.suite + "' (expected one of: " + known + ")");
  }
  const auto selected = [&](const char* name) {
    return options.suite == "all" || options.suite == name;
  };

  VerifyReport report;
  report.seed = options.seed;
  if (selected("distance_chain"))
    report.suites.push_back(distance_chain_suite(options.seed, options.inject_failure));
  if (selected("wy_reduction")) report.suites.push_back(wy_reduction_suite(options.seed));
  if (selected("f_beta_lemma")) report.suites.push_back(f_beta_lemma_suite(options.seed));
  if (selected("contractivity")) report.suites.push_back(contractivity_suite(options.seed));
  if (selected("certification_battery"))
    report.suites.push_back(certification_battery_suite(options.seed));
  if (selected("evolution_consistency"))
    report.suites.push_back(evolution_consistency_suite(options.seed));

  report.passed = true;
  for (const SuiteResult& suite : report.suites)
    if (suite.failures > 0) report.passed = false;
  return report;
}

}  // namespace tqsl::harness
