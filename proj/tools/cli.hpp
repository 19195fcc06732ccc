#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace trackgen::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitInvalidSpec = 2;

/// Runs one command line (args[0] is the program name) and returns the
/// process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trackgen::cli
