#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ants {

struct VerifyConfig {
  std::uint64_t seed = 12345;
  double step = 1e-4;
  double duration = 1.0;
  // Overrides keyed by tolerance name (the part after --tol- on the CLI).
  std::map<std::string, double> tolerances;
  // Keep only checks whose id or group starts with one of these.
  std::vector<std::string> only;
  // Test hook: perturbs one structure constant; the run must then fail.
  bool mutate_structure_equations = false;
};

struct CheckResult {
  std::string check_id;
  std::string paper_anchor;
  std::string status;  // pass | fail
  std::string residual_or_value;
  std::string tolerance;
  std::int64_t runtime_ms = 0;
};

struct VerifyReport {
  std::vector<CheckResult> checks;  // sorted by check_id
  bool all_pass() const;
  std::string to_json() const;  // deterministic byte layout
};

VerifyReport run_verification(const VerifyConfig& cfg = {});

}  // namespace ants
