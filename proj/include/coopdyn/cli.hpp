#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace coopdyn::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 2,
  kComputationError = 3,
  kIoError = 4,
};

// Runs one command line (without the program name). Data goes to `out`,
// diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace coopdyn::cli
