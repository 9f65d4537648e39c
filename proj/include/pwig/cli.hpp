#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pwig {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitInternal = 3,
};

// Runs one invocation of the tool. `args` excludes the program name. Results
// go to `out` (or to the files named by --output / --output-dir), diagnostics
// to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pwig
