#pragma once

#include <iosfwd>

namespace teleo::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kInvalidInput = 2;
inline constexpr int kDetected = 3;

/// Runs one `teleo` invocation, writing results to `out` and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace teleo::cli
