#pragma once

// Additive analogues of the Smarandache-type functions:
//
//   S(x)  = min{m : x <= m!}              x > 1
//   S*(x) = max{m : m! <= x}              x >= 1
//   Z(x)  = min{m : x <= m(m+1)/2}        x > 0
//   Z*(x) = max{m : m(m+1)/2 <= x}        x >= 1
//   P(x)  = min{m : p^x <= m!}            x > 0, p > 1
//   P*(x) = max{m : m! <= p^x}            x >= 1, p > 1
//
// m ranges over the positive integers. Thresholds are compared exactly as
// written (no tolerance band). Factorials up to 20! are compared as exact
// doubles, larger ones in log space.

#include <cstdint>
#include <string_view>

namespace qsandor {

std::int64_t s_of(double x);
std::int64_t s_star(double x);
std::int64_t z_of(double x);
std::int64_t z_star(double x);
std::int64_t p_of(double x, double p);
std::int64_t p_star(double x, double p);

/// m(m+1)/2 as a double (exact for m < 2^26).
double triangular(std::int64_t m);

/// log m! for m >= 0. Exact table logs up to 20!, Stirling series beyond.
double log_factorial(std::int64_t m);

enum class AsymptoticKind {
  T11,  // S*(x) / (log x / log log x)
  T13,  // Z*(x) / (sqrt(8x+1)/2)
  T15,  // log P*(x) / log x
};

std::string_view to_string(AsymptoticKind kind) noexcept;

/// Function value over its asymptote; tends to 1 as x grows.
/// Needs x > e for T11, x >= 1 for T13, x > 1 and p > 1 for T15.
double asymptotic_ratio(AsymptoticKind kind, double x, double p = 2.0);

/// The asymptote alone, same domains as asymptotic_ratio.
double asymptote(AsymptoticKind kind, double x);

}  // namespace qsandor
