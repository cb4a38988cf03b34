// Prints one [PASS]/[FAIL] line per criterion. With arguments, runs only the
// listed criteria. Exit status is 0 iff every criterion run passed.
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "silico/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) {
    for (int i = 1; i <= silico::acceptance::kCriterionCount; ++i) ids.push_back(i);
  }
  bool all = true;
  for (int id : ids) {
    if (id < 1 || id > silico::acceptance::kCriterionCount) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    const auto r = silico::acceptance::run_criterion(id);
    std::printf("%s\n", silico::acceptance::summary_line(r).c_str());
    for (const auto& line : r.details) std::printf("    %s\n", line.c_str());
    all = all && r.passed();
  }
  return all ? 0 : 1;
}
