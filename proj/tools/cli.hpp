#ifndef TWFOCK_TOOLS_CLI_HPP
#define TWFOCK_TOOLS_CLI_HPP

#include <iosfwd>

namespace twfock::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

// Subcommands: verify, series, eval, partitions.  Results go to `out` (or
// --output); diagnostics and timings go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace twfock::cli

#endif  // TWFOCK_TOOLS_CLI_HPP
