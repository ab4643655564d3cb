#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ncg::cli {

/// Process exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;       // a check did not hold
inline constexpr int kExitUsage = 2;      // bad flags, unreadable or malformed input
inline constexpr int kExitInvariant = 3;  // a proven property failed at runtime

/// Runs `ncg <args...>` (args excludes the program name). The JSON report
/// goes to --report when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncg::cli
