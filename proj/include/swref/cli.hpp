#pragma once

#include <iosfwd>

namespace swref {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitBenchFail = 1,
  kExitUsage = 2,
  kExitIo = 3,
};

/// Entry point of the `swref` tool; never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace swref
