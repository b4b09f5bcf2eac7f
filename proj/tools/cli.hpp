#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "thiele/newman.hpp"

namespace thiele::cli {

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kUsageError = 2 };

/// Parses "lo:hi:count". Empty on malformed text, lo >= hi or count < 2.
std::optional<newman::GridSpec> parse_grid(const std::string& spec);

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`, diagnostics to `err`. `env_tol` is the THIELE_TOL
/// environment value, if set; an explicit --tol takes precedence.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::optional<std::string> env_tol = std::nullopt);

}  // namespace thiele::cli
