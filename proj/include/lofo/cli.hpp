#pragma once

#include <iosfwd>

namespace lofo {

/// Exit status of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitPrecondition = 1,  ///< invalid input or a violated mathematical precondition
  kExitOperational = 2,   ///< I/O, capacity or numerical failure
};

/// Runs `lofo <subcommand> ...`. Results go to --out when given, else to `out`;
/// diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lofo
