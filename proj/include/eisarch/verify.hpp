#pragma once

#include <string>
#include <vector>

namespace eisarch {

struct Check {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct CriterionReport {
  int number = 0;
  std::string title;
  double runtime_limit_s = 0.0;
  double seconds = 0.0;
  std::vector<Check> checks;

  bool within_time() const { return seconds <= runtime_limit_s; }
  bool pass() const;
};

constexpr int kCriterionCount = 13;

// Runs one acceptance criterion (1..13); numerical failures become FAIL checks.
CriterionReport run_criterion(int number);

// "all", "omega", "whittaker", "green", "kappa"; throws ConfigError otherwise.
std::vector<int> suite_members(const std::string& suite);

// "PASS [3a] ..." lines, one per check, plus a runtime line when over budget.
std::vector<std::string> report_lines(const CriterionReport& r);
// One line for the whole criterion.
std::string summary_line(const CriterionReport& r);

}  // namespace eisarch
