#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace isgame::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kNoEquilibrium = 2,
  kVerificationFailed = 3,
};

/// Runs `isgame <args...>` (args excludes the program name), writing
/// reports to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isgame::cli
