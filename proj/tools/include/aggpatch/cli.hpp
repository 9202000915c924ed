#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aggpatch::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kDomainError = 3,
  kVerificationFailure = 4,
};

// Runs one subcommand. args[0] is the program name. Progress goes to `out`;
// failures print a one-line JSON error record to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aggpatch::cli
