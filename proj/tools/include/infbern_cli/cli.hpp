#pragma once

#include <exception>
#include <ostream>
#include <string>
#include <vector>

namespace infbern::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInputError = 2,
  kGeometryInconsistency = 3,
  kUnsupportedDomain = 4,
  kHypothesisViolation = 5,
  kSolverDivergence = 6,
};

/// Maps a library exception onto the documented exit codes.
int exit_code_for(const std::exception& e);

/// Runs one command line (args[0] is the program name). Reports go to `out`,
/// diagnostics to `err`; files land below --out-dir.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace infbern::cli
