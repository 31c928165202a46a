#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tsallis::cli {

/// Process exit codes. These are a stable contract for scripts.
enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kRegimeViolation = 2,
  kNotConverged = 3,
};

/// Runs one subcommand (solve, check, sweep, compare). `args` excludes the
/// program name. Results go to `out`, one-line JSON errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsallis::cli
