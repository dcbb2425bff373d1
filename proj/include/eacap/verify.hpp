#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace eacap {

struct SuiteResult {
  std::string name;
  int checks = 0;
  int failures = 0;
  std::vector<std::string> messages;  // one per failure
  bool pass() const { return failures == 0; }
};

struct VerifyOptions {
  uint64_t seed = 7;
  int entropy_instances = 50;
  int types_n_max = 12;
  bool inject_fault = false;  // negative control: perturbs a Kraus operator
};

// Suite names: linalg, channels, entropy, types, hw, twirl, coding.
SuiteResult run_suite(const std::string& name, const VerifyOptions& opts);
std::vector<SuiteResult> run_all_suites(const VerifyOptions& opts);
std::vector<std::string> suite_names();

}  // namespace eacap
