#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kprab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable that replaces the default series tolerance when set.
inline constexpr const char* kTolEnv = "KPRAB_TOL";

/// Parses `args` (without the program name), runs the subcommand and returns the exit status.
/// Results go to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kprab::cli
