#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cohoforge {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitParse = 2,
  kExitRealize = 3,
  kExitBudget = 4,
};

/// Runs the command line (args excludes the program name). Output is
/// buffered and written to `out` once the command finishes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cohoforge
