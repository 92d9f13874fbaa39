#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace covsep {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNumericalFailure = 2;

/// Runs the command-line front end on the given arguments (program name
/// excluded), writing reports to out and diagnostics to err. Returns the
/// process exit code: 0 when the analysis completed (whatever the verdict),
/// 1 on malformed input, 2 on an internal numerical failure.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace covsep
