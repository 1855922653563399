#pragma once

// Self-contained verification suites: randomized checks of every inequality
// the library's certificates rest on.  Each suite reports its case count,
// failure count, and the worst slack (smallest margin by which an inequality
// held; negative slack is a failure).

#include <cstdint>
#include <string>
#include <vector>

#include "tqsl/harness/config.hpp"

namespace tqsl::harness {

struct VerifyOptions {
  std::uint64_t seed = 1;
  // "all" or one of the suite names below.
  std::string suite = "all";
  // Self-test hook: negates one inequality in the first distance-chain case
  // so the reporting path (nonzero exit, localized failure) can be exercised.
  bool inject_failure = false;
};

struct SuiteResult {
  std::string suite;
  long cases = 0;
  long failures = 0;
  double worst_slack = 0.0;
  std::vector<std::string> messages;  // first few failure descriptions
};

struct VerifyReport {
  std::uint64_t seed = 0;
  bool passed = false;
  std::vector<SuiteResult> suites;
};

// Suite names, in run order:
//   distance_chain        trace/Bures vs D-measure inequalities, tight and
//                         loose forms, 200 random state pairs (dims 2..10,
//                         mixed ranks)
//   wy_reduction          skew-information bound -tr [sqrt(rho),V]^2 <=
//                         2<V^2>, 200 thermal instances
//   f_beta_lemma          f(E,E')^2 <= e^{-beta E} + e^{-beta E'} on a
//                         61x61x11 (E, E', beta) grid
//   contractivity         trace distance is non-increasing under partial
//                         trace, 100 bipartite pairs
//   certification_battery full bound-vs-actual certification on 200 random
//                         instances (dims 2..10, beta in (0,5], 20 times)
//   evolution_consistency sqrt-evolution transport defect < 1e-8 and the
//                         dD/dt identity with second-order finite-difference
//                         convergence (error ratio 4 +/- 0.5 when halving
//                         the stencil), 10 instances
const std::vector<std::string>& verify_suite_names();

VerifyReport run_verify(const VerifyOptions& options);

}  // namespace tqsl::harness
