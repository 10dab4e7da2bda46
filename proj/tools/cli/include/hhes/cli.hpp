#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hhes::cli {

/// Stable exit codes.
enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kNumericFailure = 3,
  kIoFailure = 4,
};

inline constexpr const char* kToolVersion = "0.1.0";

/// Runs the `hhes` front end on `args` (program name excluded).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hhes::cli
