#pragma once

#include <iosfwd>

namespace circlekit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailedChecks = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitNumerical = 4;

/// Parses and dispatches one circle-kit invocation.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace circlekit::cli
