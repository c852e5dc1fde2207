#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace eulerdel {

// Exit codes shared by every subcommand.
inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitOracleMismatch = 3;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; the return value is the process exit code.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace eulerdel
