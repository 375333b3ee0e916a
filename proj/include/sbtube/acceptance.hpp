#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sbtube {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs every acceptance criterion at its pinned tolerance; one result per
// criterion. When live is nonnull, a pass/fail line is printed as each
// criterion completes.
std::vector<CriterionResult> run_acceptance(std::ostream* live = nullptr);

}  // namespace sbtube
