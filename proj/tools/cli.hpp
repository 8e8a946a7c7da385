#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace interkernel::cli {

inline constexpr int kExitUsage = 64;
inline constexpr int kExitInput = 65;
inline constexpr int kExitInternal = 70;

/// Runs one command line (args excludes the program name). Reports go to
/// `out`, diagnostics to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace interkernel::cli
