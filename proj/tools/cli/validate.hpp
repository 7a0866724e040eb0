#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace selfish::cli {

struct ValidateOptions {
  bool quick = false;         // 10^5 events per point, tolerance 0.02
  bool inject_fault = false;  // corrupt one oracle reward; the suite must fail
  unsigned workers = 1;
};

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// Closed form vs oracle, simulation vs closed form, threshold crossing,
/// honest control, occupancy, waste, superlinearity, state-machine table and
/// determinism.
std::vector<CheckResult> run_validation(const ValidateOptions& options);

/// One "name,measured,bound,PASS|FAIL" line per check after a header.
void write_summary(std::ostream& out, const std::vector<CheckResult>& checks);

}  // namespace selfish::cli
