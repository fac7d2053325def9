#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace levelpath::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,   // bad flags, parse errors, rejected configuration
  kTraceFailed = 2,  // trace ended on a failure termination (partial output written)
  kWriteFailed = 3,
};

/// Runs `levelpath <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace levelpath::cli
