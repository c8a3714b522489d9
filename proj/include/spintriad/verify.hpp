#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spintriad {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyConfig {
  double tol = 1e-9;
  long long samples = 1000000;
  uint64_t seed = 0;
  int workers = 1;
  long long grid = 1000;
  long long randoms = 100000;
};

std::vector<std::string> suite_names();

/// Run one of the named suites ("table1", "appendixA", "appendixB",
/// "appendixC", "designs", "invariants", or "all").
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyConfig& cfg);

}  // namespace spintriad
