#pragma once

#include <iosfwd>

namespace mtsweep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // I/O or input errors
inline constexpr int kExitUsage = 2;

/// Entry point of the `mtsweep` tool. Data goes to `out` (or to files named
/// on the command line), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mtsweep::cli
