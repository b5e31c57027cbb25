#pragma once

#include <ostream>

namespace twoperiodic::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitNumeric = 4;

/// Entry point of the `twoperiodic` tool: simulate | closed | classify |
/// compare | sweep. Results go to `out` (or the -o file), diagnostics to `err`.
/// Returns 0 on success, 2 on usage errors, 3 on domain errors and 4 on
/// numeric, convergence or resource errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace twoperiodic::cli
