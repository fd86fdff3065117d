#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thermo::cli {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs acceptance criteria 1-10 in order, printing one line per criterion
/// to `out` as each finishes.
std::vector<CriterionResult> run_acceptance(std::ostream& out, unsigned threads = 1);

/// run_acceptance plus a summary line; 0 when every criterion passes, else 1.
int cmd_selftest(std::ostream& out, unsigned threads = 1);

}  // namespace thermo::cli
