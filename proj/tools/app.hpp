#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mokw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line (args excludes the program name). Reports go to out,
/// diagnostics and usage text to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mokw::cli
