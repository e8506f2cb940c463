#ifndef LOGEULER_SELFTEST_HPP
#define LOGEULER_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace logeuler {

/// One record of the self-verification suite. lhs and rhs are exact
/// values in text form; pass holds exactly when they are equal (or the
/// stated predicate holds).
struct CheckResult {
  std::string name;
  std::string lhs;
  std::string rhs;
  bool pass = false;
  std::string note;
  int criterion = 0;  // acceptance criterion tag; 0 = supplementary
};

struct RunReport {
  std::vector<CheckResult> checks;
  int determined_sign = 0;
  long long elapsed_ms = 0;

  bool all_pass() const;
  size_t failures() const;
  nlohmann::json to_json() const;
  std::string to_text(bool verbose = false) const;
};

struct SelftestOptions {
  /// Fault injection: perturb one embedded constant so the harness
  /// demonstrably catches a corrupted table.
  bool corrupt_delta = false;
  unsigned random_sheaves = 20;
  uint64_t seed = 20260810ULL;
  /// Smaller bound for quick runs; the acceptance suite uses 7.
  unsigned factorization_weight = 7;
};

/// Runs the full identity suite over the built-in models and covers.
/// Individual failures are collected, never aborting the run.
RunReport run_selftest(const SelftestOptions& options = {});

}  // namespace logeuler

#endif
