#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace twistvn::selftest {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the full acceptance battery (the nine criteria the tool is
/// validated against) with fixed seeds. Progress lines are written to
/// `progress` when given.
std::vector<CriterionResult> run_acceptance(std::ostream* progress = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace twistvn::selftest
