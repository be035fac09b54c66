#include <cstdio>

#include "eisarch/verify.hpp"

int main() {
  bool all = true;
  for (int n = 1; n <= eisarch::kCriterionCount; ++n) {
    const eisarch::CriterionReport rep = eisarch::run_criterion(n);
    std::printf("%s\n", eisarch::summary_line(rep).c_str());
    for (const std::string& line : eisarch::report_lines(rep)) std::printf("    %s\n", line.c_str());
    std::fflush(stdout);
    all = all && rep.pass();
  }
  return all ? 0 : 1;
}
