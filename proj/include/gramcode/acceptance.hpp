#ifndef GRAMCODE_ACCEPTANCE_HPP
#define GRAMCODE_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace gramcode {

// Built-in verification suite: every check pins an exact reference value or
// identity and reports one pass/fail line. Probes are informational and do
// not gate the overall outcome.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  bool probe = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  // Wall-clock budget for the two heavyweight interpolation checks; when it
  // runs out they fall back to their minimum sample requirements.
  double fit_budget_seconds = 1500.0;
  std::uint64_t channel_trials = 10000;
  bool parallel = true;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

// Prints one line per criterion to stdout; returns the number of failed
// gating criteria.
int report_acceptance(const std::vector<CriterionResult>& results);

}  // namespace gramcode

#endif
