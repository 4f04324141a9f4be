#include "qsandor/sandor_classic.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qsandor/error.hpp"

namespace qsandor {

namespace {

constexpr int kExactFactorialMax = 20;

// m! for m <= 20. Every entry is exactly representable as a double.
constexpr std::array<double, kExactFactorialMax + 1> kFactorials = [] {
  std::array<double, kExactFactorialMax + 1> table{};
  std::uint64_t f = 1;
  table[0] = 1.0;
  for (int m = 1; m <= kExactFactorialMax; ++m) {
    f *= static_cast<std::uint64_t>(m);
    table[m] = static_cast<double>(f);
  }
  return table;
}();

// Past this the index no longer fits a double mantissa.
constexpr double kMaxIndex = 9.0e15;

[[noreturn]] void domain(const std::string& what) { throw Error(Errc::DomainError, what); }

void require_finite(double x, const char* fn) {
  if (!std::isfinite(x)) domain(std::string(fn) + ": argument must be finite");
}

double stirling_log_gamma(double z) {
  const double z2 = z * z;
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) +
         1.0 / (12.0 * z) - 1.0 / (360.0 * z * z2) + 1.0 / (1260.0 * z * z2 * z2) -
         1.0 / (1680.0 * z * z2 * z2 * z2);
}

// Largest m >= 1 with m! <= value, where log_value = log(value) is supplied
// separately so callers can pass quantities like p^x that overflow.
std::int64_t max_factorial_index(double value, double log_value) {
  if (value <= kFactorials[kExactFactorialMax]) {
    std::int64_t m = 1;
    while (m < kExactFactorialMax && kFactorials[m + 1] <= value) ++m;
    return m;
  }
  // Newton on log Γ(m+1) = L; convex and started above the root, so the
  // iterates decrease monotonically.
  double m_real = log_value;
  for (int it = 0; it < 200; ++it) {
    const double step = (stirling_log_gamma(m_real + 1.0) - log_value) / std::log(m_real + 0.5);
    m_real -= step;
    if (std::abs(step) < 0.25) break;
  }
  if (!(m_real < kMaxIndex)) domain("factorial index exceeds the representable range");

  auto m = static_cast<std::int64_t>(std::floor(m_real));
  if (m < kExactFactorialMax) m = kExactFactorialMax;
  while (log_factorial(m + 1) <= log_value) ++m;
  while (m > kExactFactorialMax && log_factorial(m) > log_value) --m;
  return m;
}

// Smallest m >= 1 with value <= m!.
std::int64_t min_factorial_index(double value, double log_value) {
  if (value <= kFactorials[kExactFactorialMax]) {
    std::int64_t m = 1;
    while (kFactorials[m] < value) ++m;
    return m;
  }
  const std::int64_t m = max_factorial_index(value, log_value);
  return log_factorial(m) == log_value ? m : m + 1;
}

long double triangular_ld(std::int64_t m) {
  return static_cast<long double>(m) * static_cast<long double>(m + 1) / 2.0L;
}

void require_base(double p) {
  if (!std::isfinite(p) || !(p > 1.0)) domain("base p must be finite and > 1");
}

}  // namespace

double triangular(std::int64_t m) { return static_cast<double>(triangular_ld(m)); }

double log_factorial(std::int64_t m) {
  if (m < 0) domain("log_factorial needs m >= 0");
  if (m <= kExactFactorialMax) return std::log(kFactorials[m]);
  return stirling_log_gamma(static_cast<double>(m) + 1.0);
}

std::int64_t s_of(double x) {
  require_finite(x, "S");
  if (!(x > 1.0)) domain("S(x) is defined for x > 1");
  return min_factorial_index(x, std::log(x));
}

std::int64_t s_star(double x) {
  require_finite(x, "S*");
  if (!(x >= 1.0)) domain("S*(x) is defined for x >= 1");
  return max_factorial_index(x, std::log(x));
}

std::int64_t z_star(double x) {
  require_finite(x, "Z*");
  if (!(x >= 1.0)) domain("Z*(x) is defined for x >= 1");
  const auto xl = static_cast<long double>(x);
  auto m = static_cast<std::int64_t>(std::floor((std::sqrt(8.0L * xl + 1.0L) - 1.0L) / 2.0L));
  if (m < 1) m = 1;
  // The float sqrt can land one off near a triangular number.
  while (triangular_ld(m + 1) <= xl) ++m;
  while (m > 1 && triangular_ld(m) > xl) --m;
  return m;
}

std::int64_t z_of(double x) {
  require_finite(x, "Z");
  if (!(x > 0.0)) domain("Z(x) is defined for x > 0");
  if (x <= 1.0) return 1;
  const std::int64_t m = z_star(x);
  return triangular_ld(m) == static_cast<long double>(x) ? m : m + 1;
}

std::int64_t p_star(double x, double p) {
  require_finite(x, "P*");
  require_base(p);
  if (!(x >= 1.0)) domain("P*(x) is defined for x >= 1");
  return max_factorial_index(std::pow(p, x), x * std::log(p));
}

std::int64_t p_of(double x, double p) {
  require_finite(x, "P");
  require_base(p);
  if (!(x > 0.0)) domain("P(x) is defined for x > 0");
  return min_factorial_index(std::pow(p, x), x * std::log(p));
}

std::string_view to_string(AsymptoticKind kind) noexcept {
  switch (kind) {
    case AsymptoticKind::T11: return "T11";
    case AsymptoticKind::T13: return "T13";
    case AsymptoticKind::T15: return "T15";
  }
  return "?";
}

double asymptote(AsymptoticKind kind, double x) {
  require_finite(x, "asymptote");
  switch (kind) {
    case AsymptoticKind::T11:
      if (!(x > std::numbers::e)) domain("log x / log log x needs x > e");
      return std::log(x) / std::log(std::log(x));
    case AsymptoticKind::T13:
      if (!(x >= 1.0)) domain("the Z* asymptote needs x >= 1");
      return 0.5 * std::sqrt(8.0 * x + 1.0);
    case AsymptoticKind::T15:
      if (!(x > 1.0)) domain("log x needs x > 1");
      return std::log(x);
  }
  domain("unknown asymptotic kind");
}

double asymptotic_ratio(AsymptoticKind kind, double x, double p) {
  const double denom = asymptote(kind, x);
  switch (kind) {
    case AsymptoticKind::T11: return static_cast<double>(s_star(x)) / denom;
    case AsymptoticKind::T13: return static_cast<double>(z_star(x)) / denom;
    case AsymptoticKind::T15: return std::log(static_cast<double>(p_star(x, p))) / denom;
  }
  domain("unknown asymptotic kind");
}

}  // namespace qsandor
