#include <cstdlib>
#include <cstring>

#include "gramcode/acceptance.hpp"

int main(int argc, char** argv) {
  gramcode::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--fit-budget-seconds") == 0 && i + 1 < argc)
      opts.fit_budget_seconds = std::atof(argv[++i]);
    else if (std::strcmp(argv[i], "--trials") == 0 && i + 1 < argc)
      opts.channel_trials = std::strtoull(argv[++i], nullptr, 10);
    else if (std::strcmp(argv[i], "--serial") == 0)
      opts.parallel = false;
  }
  auto results = gramcode::run_acceptance(opts);
  int failed = gramcode::report_acceptance(results);
  return failed == 0 ? 0 : 1;
}
