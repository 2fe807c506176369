#pragma once

#include <iosfwd>

namespace fairprice {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSelfcheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Parses argv, runs the requested experiment, writes artifacts and returns
/// the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fairprice
