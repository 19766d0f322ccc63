#include <cstdio>
#include <cstdlib>
#include <string>

#include "scenarios.hpp"

using namespace horseshoe::scenarios;

int main(int argc, char** argv) {
  ScenarioOptions options;
  if (const char* w = std::getenv("HSMDIM_WORKERS")) options.workers = std::stoul(w);
  int first = 1;
  int last = kCriterionCount;
  if (argc > 1) first = last = std::stoi(argv[1]);
  int failed = 0;
  for (int id = first; id <= last; ++id) {
    const CriterionResult r = run_criterion(id, options);
    std::printf("%s %2d %-24s %s [%.1fs]\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.detail.c_str(),
                r.seconds);
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  std::printf("%d/%d criteria passed\n", last - first + 1 - failed, last - first + 1);
  return failed == 0 ? 0 : 1;
}
