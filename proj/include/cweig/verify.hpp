#pragma once

#include <string>
#include <vector>

namespace cweig {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
  int failures() const;
};

/// "specfun", "zeros", "eigen", "oracle".
const std::vector<std::string>& suite_names();

/// Runs the invariant checks of one module. Throws DomainError for an
/// unknown suite name; numerical exceptions inside a check mark that check
/// failed instead of propagating.
SuiteReport run_suite(const std::string& name);

/// Shortest round-trip decimal representation.
std::string format_number(double x);

}  // namespace cweig
