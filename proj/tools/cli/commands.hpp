#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace specshift::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInvariant = 3;
inline constexpr int kExitNumerical = 4;
inline constexpr int kExitFalsified = 5;

/// Runs one command line (without the program name). Results go to `out`
/// unless --out names a file; diagnostics and structured error records go
/// to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specshift::cli
