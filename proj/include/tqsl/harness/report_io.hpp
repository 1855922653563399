#pragma once

// Deterministic report writers.  CSV and JSON are contractual formats: UTF-8,
// '.' decimal separator, doubles printed with 17 significant digits
// (round-trip exact), no timestamps or machine identifiers, so repeated runs
// with the same seed produce byte-identical files.  SVG is a non-contractual
// convenience rendering.

#include <string>
#include <vector>

#include "tqsl/bounds.hpp"
#include "tqsl/harness/sweep.hpp"
#include "tqsl/harness/verify.hpp"

namespace tqsl::harness {

// %.17g with the C locale.
std::string format_double(double v);

// Quench outputs: one CSV row per time point with the clamped (certifying)
// values.  Every row is re-checked at emission: each trace-distance bound
// must be >= D_tr - 1e-9 (std::runtime_error otherwise).
std::string quench_csv(const BoundReport& report);
std::string quench_json(const BoundReport& report);
std::string quench_svg(const BoundReport& report);

// Sweep outputs: one CSV row per successful size with pre-clamp values;
// failures and fits go to the JSON report.
std::string sweep_csv(const ScalingResult& result);
std::string sweep_json(const ScalingResult& result);
std::string sweep_svg(const ScalingResult& result);

std::string verify_json(const VerifyReport& report);

// Writes `content` to dir/name, creating dir if needed.
void write_file(const std::string& dir, const std::string& name, const std::string& content);

}  // namespace tqsl::harness
