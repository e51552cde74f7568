#pragma once

#include <iosfwd>

namespace pdp::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInvalidConfig = 2,
  kVerificationFailed = 3,
  kResourceLimit = 4,
};

/// Runs the command line. Data goes to `out` (or the --output file), one-line
/// error reasons "error: <kind>: <message>" go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pdp::cli
