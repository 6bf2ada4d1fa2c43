#pragma once

// Bundled quick invariant suites for `dsw selftest`.

#include <string>
#include <vector>

namespace dsw {

struct SelfTestResult {
  std::string suite;
  bool passed = false;
  std::size_t cases = 0;
  std::string detail;
};

struct SelfTestOptions {
  unsigned long long seed = 20240531;
  /// Flip the sign of every recovered KM coefficient before comparing.
  bool inject_fault = false;
};

std::vector<SelfTestResult> run_selftest(const SelfTestOptions& opts = {});

} // namespace dsw
