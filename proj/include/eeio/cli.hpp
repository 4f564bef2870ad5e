#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eeio::cli {

enum ExitCode : int { kSuccess = 0, kDataFailure = 1, kUsage = 2 };

/// Conservation residual above which `attribute` exits with kDataFailure.
inline constexpr double kAttributeResidualLimit = 1e-8;

/// Runs one command line (without the program name). Reports go to `out` as
/// JSON, errors to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eeio::cli
