#pragma once

#include <iosfwd>

namespace prw {

// Exit codes of the prw tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitIo = 3,
  kExitInadmissible = 4,
};

// Runs one prw invocation. Results go to `out` unless an output file is
// selected (--output, or $PRW_OUTPUT_DIR/<subcommand>.<ext>); diagnostics go
// to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace prw
