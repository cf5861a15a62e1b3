#pragma once

#include <iosfwd>

namespace obstruction_lab {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitUsage = 64;

// Parses argv (argv[0] is the program name), runs one subcommand and returns
// its exit code. Results go to --out when given, otherwise result.json is
// printed to `out`; diagnostics go to `err`.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace obstruction_lab
