#pragma once

#include <ostream>

namespace pushpull::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailedRun = 1;  // only with --strict
inline constexpr int kExitUsage = 2;

/// Parses argv, runs one subcommand and returns the process exit status.
/// Primary output goes to `out` (or --out), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pushpull::cli
