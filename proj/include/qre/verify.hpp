#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace qre {

struct SuiteParams {
  /// Matrix sizes to check; empty means the suite's default grid.
  std::vector<int> n;
  /// Orders of the root of unity; empty means the suite's default grid.
  std::vector<int> ell;
  std::uint64_t seed = 20240611;
  int workers = 1;
  /// Largest admissible n^(2m) for a degree-m expansion.
  std::uint64_t budget = 65536;
  /// Also run the slow n = 4 determinant checks.
  bool long_running = false;
  bool timing = false;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  SuiteParams params;
  std::vector<CheckResult> checks;
  double wall_seconds = 0;

  bool passed() const;
  std::size_t failures() const;
  /// Wall time is included only when params.timing is set, so reports are
  /// byte-identical across runs by default.
  nlohmann::json to_json() const;
  std::string to_text() const;
};

const std::vector<std::string>& suite_names();

/// Throws Error(kInfeasible) when the requested grid exceeds the budget.
SuiteReport run_suite(std::string_view name, const SuiteParams& params);

/// n^(2 * degree), saturating.
std::uint64_t expansion_cost(int n, int degree);

}  // namespace qre
