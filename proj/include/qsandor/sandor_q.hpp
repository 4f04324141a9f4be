#pragma once

// q-analogues of Z, Z*, P, P* for 0 < q < 1.
//
// Z_q and Z_q* live on the q-triangular ladder
//
//   T_q(m) = Γ_q(m+2) / (2 Γ_q(m)) = [m]_q [m+1]_q / 2
//          = (1 - q^m)(1 - q^(m+1)) / (2 (1-q)^2),
//
// which increases strictly towards sup = 1/(2(1-q)^2) and never reaches it.
// For x >= sup the defining set of Z_q* is all of N and has no maximum, so
// both Z_q and Z_q* raise SupExceeded there instead of returning a limit.

#include <cstdint>
#include <vector>

#include "qsandor/qspecial.hpp"

namespace qsandor {

class QTriangularLadder {
 public:
  /// Throws DomainError unless q is in the sub-unit regime.
  explicit QTriangularLadder(QParam q);

  QParam q() const noexcept { return q_; }

  /// T_q(m), m >= 1, from the product form.
  double operator()(std::int64_t m) const;

  /// T_q(1) = (1+q)/2, the left end of Z_q*'s domain.
  double first() const noexcept { return (*this)(1); }

  /// 1/(2(1-q)^2).
  double sup() const noexcept { return 1.0 / denom_; }

  /// First `count` rungs T_q(1), ..., T_q(count).
  std::vector<double> values(std::size_t count) const;

  /// Largest m with T_q(m) <= x. Pre: first() <= x < sup().
  std::int64_t star_index(double x) const;

  /// Smallest m with x <= T_q(m). Pre: 0 < x < sup().
  std::int64_t min_index(double x) const;

  /// Closed-form estimate of star_index from the quadratic in y = q^m.
  std::int64_t seed_index(double x) const;

 private:
  QParam q_;
  double log_q_;
  double denom_;  // 2 (1-q)^2
};

/// T_q(m); same value as QTriangularLadder(q)(m).
double q_triangular(std::int64_t m, QParam q);

/// [m]_q for the smallest m with x <= T_q(m).
/// DomainError if x <= 0, SupExceeded if x >= sup.
double z_q(double x, QParam q);

/// [m]_q for the largest m with T_q(m) <= x.
/// DomainError if x < T_q(1), SupExceeded if x >= sup.
double z_q_star(double x, QParam q);

/// The integer m behind z_q / z_q_star, same errors.
std::int64_t z_q_index(double x, QParam q);
std::int64_t z_q_star_index(double x, QParam q);

struct QBoundPair {
  double lower;
  double upper;
};

/// lower = (sqrt(1+8xq) - (1+2q)) / (2q^2), upper = (sqrt(1+8xq) - 1) / (2q),
/// with lower < Z_q*(x) <= upper. Evaluated in cancellation-free form.
/// lower < upper holds exactly when x < sup. DomainError if x < T_q(1).
QBoundPair z_q_star_bounds(double x, QParam q);

/// Smallest m with p^x <= Γ_q(m+1). p > 1, x > 0.
std::int64_t p_q(double x, QParam q, double p, const Precision& prec = Precision{});

/// Largest m with Γ_q(m+1) <= p^x. p > 1, x >= 1.
std::int64_t p_q_star(double x, QParam q, double p, const Precision& prec = Precision{});

/// log Γ_q(m+1) = sum_{k<=m} log(1-q^k) - m log(1-q), with the sum stopped
/// once |log(1-q^k)| < prec.rel_tol. m >= 0.
double log_q_gamma_int(std::int64_t m, QParam q, const Precision& prec = Precision{});

/// x log p / log(1/(1-q)), the growth rate of P_q*.
double p_q_star_asymptote(double x, QParam q, double p);

/// Z_q*(x) <= Z_q(x) <= Z_q*(x) + 1, for T_q(1) <= x < sup.
bool sandwich_check(double x, QParam q);

/// P_q*(x) <= P_q(x) <= P_q*(x) + 1, for x >= 1.
bool sandwich_check_p(double x, QParam q, double p, const Precision& prec = Precision{});

}  // namespace qsandor
