#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fourfold {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitConsistency = 2,
  kExitModelCheck = 3,
};

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fourfold
