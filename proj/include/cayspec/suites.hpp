#pragma once

// Verification suites: expectation tables run against the library, one
// CheckRecord per expectation.

#include <string>
#include <string_view>
#include <vector>

#include "cayspec/report.hpp"

namespace cayspec {

struct SuiteOptions {
  unsigned threads = 1;
  bool reduce = true;
};

/// ab, ks, main, cis, bounds, lifts, oracles, ds, s4-transitive.
std::vector<std::string> suite_names();

/// Throws std::invalid_argument for an unknown suite.
VerificationReport run_suite(std::string_view name, const SuiteOptions& opts = {});

/// Checks numbered 1..10 in the acceptance table.
inline constexpr int kCriterionCount = 10;
VerificationReport criterion_report(int criterion, const SuiteOptions& opts = {});

/// Searches are memoised per (group, predicate, options) for the life of the
/// process so that suites sharing groups do not repeat work.
const GroupVerdict& cached_search(const std::string& group_expr, Predicate p, const SuiteOptions& opts);

}  // namespace cayspec
