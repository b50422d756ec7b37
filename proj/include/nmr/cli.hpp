#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nmr::cli {

// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,     // bad arguments or unparsable input
  kSemanticError = 2,  // caps, zero mass, non-normal theory where one is required
  kCheckFailed = 3,    // `check` found a disagreement
};

// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nmr::cli
