#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace altsurg::cli {

enum ExitCode : int {
  kOk = 0,
  kNonexistence = 2,
  kNotFound = 3,
  kVerifyFail = 4,
  kParse = 64,
  kCapacity = 65,
};

/// Runs the command line `args` (without the program name). Everything the
/// command prints goes to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace altsurg::cli
