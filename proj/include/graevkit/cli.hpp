#pragma once

#include <iosfwd>

namespace graevkit {

/// Exit codes of the command line tool.
enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitInput = 2 };

/// Runs one graevkit command. JSON results go to `out` (or the --out file),
/// human-readable summaries to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace graevkit
