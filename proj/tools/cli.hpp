#pragma once

#include <ostream>
#include <string>

namespace qsandor::cli {

// Exit codes: 0 success, 1 verification failure or domain error, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Shortest round-trip decimal form, locale independent ("inf", "-inf", "nan"
/// for non-finite values).
std::string format_double(double value);

}  // namespace qsandor::cli
