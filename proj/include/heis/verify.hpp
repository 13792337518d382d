#pragma once

#include "heis/grid.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace heis::verify {

struct CheckConfig {
  std::size_t n = 2;
  std::uint64_t seed = 42;
  long trials = 1000;
  long functions = 20;
  double tol_override = -1.0;  // negative: per-check default
  GridSpec grid{1, 8.0, 2048};
  bool exact = true;  // scalar mode of the algebra suites
};

struct CheckResult {
  std::string name;
  long instances = 0;
  double max_defect = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  // Where the worst instance lives: replaying this stream up to the trial
  // index reproduces the concrete inputs (draws are deterministic).
  std::string worst_stream;
  long worst_trial = 0;
};

struct SuiteResult {
  std::string suite;
  std::string mode;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double wall_time_s = 0.0;
  std::vector<CheckResult> checks;

  bool pass() const;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs one named check; throws on unknown names.
CheckResult run_check(const std::string& name, const CheckConfig& cfg);

/// Runs a whole suite ("group", "momentum", "cotype", "quantization").
SuiteResult run_suite(const std::string& suite, const CheckConfig& cfg);

/// Report with one record per invariant; key order is stable, so the
/// serialized document is byte-identical for identical flags and seed apart
/// from the wall-time field.
nlohmann::json report_json(const std::vector<SuiteResult>& suites);

}  // namespace heis::verify
