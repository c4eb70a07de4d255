#pragma once

// Cross-engine and algebraic self-checks run by `dnoise verify`.

#include <string>
#include <vector>

namespace dnoise {

struct CheckResult {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

std::vector<CheckResult> run_verification();

// One line per check plus a summary line.
std::string format_report(const std::vector<CheckResult>& results);

}  // namespace dnoise
