#pragma once

#include <iosfwd>

namespace sectorlab {

/// Exit codes of the sectorlab command line.
enum ExitCode : int {
  kExitSuccess = 0,
  kExitViolations = 1,
  kExitInputError = 2,
  kExitNoConvergence = 3,
};

/// Entry point behind the sectorlab binary; results go to `out` (or files),
/// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sectorlab
