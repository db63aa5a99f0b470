#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qra::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationError = 1,
  kUsageError = 2,
  kComputationError = 3,
};

struct Environment {
  bool stdout_is_tty = false;
  bool no_color = false;  // QRA_NO_COLOR is set
};

/// Runs one invocation. `args` excludes the program name. Reports go to
/// `out` (unless --out names a file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env = {});

}  // namespace qra::cli
