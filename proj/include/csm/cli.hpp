#pragma once

#include <iosfwd>

namespace csm {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitTolerance = 3;

/// Command-line entry point. Results go to `out` (or files named by --out /
/// --out-dir), diagnostics to `err`. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace csm
