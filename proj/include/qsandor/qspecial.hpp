#pragma once

// q-series primitives: q-integers, q-factorials, the infinite q-Pochhammer
// symbol and Jackson's q-gamma function for both 0 < q < 1 and q > 1.
//
// Anything that can overflow a double (factorials, gamma values, infinite
// products) is returned as a LogValue.

#include <cmath>
#include <cstdint>

namespace qsandor {

enum class Regime { SubUnit, SuperUnit };

/// Deformation parameter q > 0, q != 1, tagged with its regime.
class QParam {
 public:
  /// Throws Error(DomainError) unless q is finite, positive and not 1.
  explicit QParam(double q);

  double value() const noexcept { return q_; }
  Regime regime() const noexcept { return regime_; }
  bool sub_unit() const noexcept { return regime_ == Regime::SubUnit; }

 private:
  double q_;
  Regime regime_;
};

/// Truncation control for every infinite product.
struct Precision {
  static constexpr double kDefaultRelTol = 1e-12;
  static constexpr std::int64_t kDefaultMaxTerms = 10'000;

  /// Throws Error(DomainError) unless 0 < rel_tol < 1e-3 and max_terms >= 64.
  explicit Precision(double rel_tol = kDefaultRelTol,
                     std::int64_t max_terms = kDefaultMaxTerms);

  double rel_tol;
  std::int64_t max_terms;
};

/// Natural log of a strictly positive quantity.
struct LogValue {
  double log_magnitude = 0.0;

  /// exp(log_magnitude); +inf or 0 when it leaves the double range.
  double value() const noexcept { return std::exp(log_magnitude); }

  static LogValue from_value(double positive);
};

/// Half-width of the band around 1 where Γ_q is refused (QTooCloseToOne).
inline constexpr double kQNearOneGuard = 1e-6;

/// [m]_q = (1 - q^m)/(1 - q) for integer m >= 1. Summed explicitly as
/// 1 + q + ... + q^(m-1) when |1 - q| < 1e-6.
double q_integer(std::int64_t m, QParam q);

/// log [x]_q for real x > 0, stable for both regimes and for large x.
double log_q_integer(double x, QParam q);

/// log (n!)_q = sum_{k=1}^{n} log [k]_q; (0!)_q = 1.
LogValue q_factorial(std::int64_t n, QParam q);

/// log (a;q)_inf = sum_{n>=0} log(1 - a q^n), 0 < q < 1.
///
/// The product is cut after the first N+1 factors, where N is the smallest
/// index with |a| q^(N+1) / ((1-q)(1 - a q^(N+1))) < prec.rel_tol. That
/// quantity bounds the dropped log-tail, so the result is within rel_tol
/// (relative) of the infinite product.
///
/// Errors: DomainError if q >= 1; NonPositiveFactor if some factor is <= 0;
/// TermCapExceeded if more than prec.max_terms factors would be needed.
LogValue q_pochhammer_inf(double a, QParam q, const Precision& prec = Precision{});

/// log Γ_q(x), x > 0.
///
///   0 < q < 1:  Γ_q(x) = (q;q)_inf / (q^x;q)_inf * (1-q)^(1-x)
///   q > 1:      Γ_q(x) = (1/q;1/q)_inf / (q^-x;1/q)_inf * (q-1)^(1-x) * q^(x(x-1)/2)
///
/// Errors: DomainError for x <= 0; QTooCloseToOne if |1-q| < 1e-6; anything
/// q_pochhammer_inf raises.
LogValue log_q_gamma(double x, QParam q, const Precision& prec = Precision{});

/// Reduced forms of Moak's q-Stirling asymptotic for log Γ_q(n+1).
struct MoakApprox {
  double mid;     // (n + 1/2) log((q^(n+1) - 1)/(q - 1))
  double coarse;  // n log(1/(1-q))
};

/// 0 < q < 1, n >= 1.
MoakApprox moak_log_gamma_approx(std::int64_t n, QParam q);

}  // namespace qsandor
