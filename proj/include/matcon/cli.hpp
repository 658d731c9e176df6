#pragma once

// Command-line front end: `report`, `verify`, `experiment`.
//
// Exit codes: 0 success, 1 a mathematical check failed, 2 usage or I/O error.

#include <ostream>
#include <string>
#include <vector>

namespace matcon {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMathFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the CLI on `args` (program name excluded), writing results to `out`
/// and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace matcon
