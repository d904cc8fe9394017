#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kmn {

/// Exit codes: 0 clean, 1 negative result (axiom failure, non-hyperideal,
/// ill-defined quotient, counterexample found), 2 usage error, 3 tool error.
inline constexpr int kExitClean = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitTool = 3;

/// Runs the command line; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kmn
