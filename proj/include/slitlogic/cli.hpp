#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slitlogic::cli {

/// Exit statuses of the command-line tool.
enum Status : int {
  kSuccess = 0,
  kVerificationFailure = 1,  ///< an identity that should hold does not
  kUsageError = 2,           ///< bad arguments, unreadable or malformed input
};

/// Runs one invocation. `args` excludes the program name. Reports go to `out`,
/// diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slitlogic::cli
