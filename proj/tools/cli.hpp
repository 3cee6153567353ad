#pragma once

#include <iosfwd>

namespace pathauction::cli {

/// Exit codes: 0 success or property holds, 1 failure or parse error,
/// 2 tie among the ranks a command depends on, 3 resource guard tripped.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kTie = 2;
inline constexpr int kTooLarge = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pathauction::cli
