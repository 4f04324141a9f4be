#include "qsandor/qspecial.hpp"

#include <algorithm>
#include <string>

#include "qsandor/compensated_sum.hpp"
#include "qsandor/error.hpp"

namespace qsandor {

namespace {

[[noreturn]] void fail(Errc code, const std::string& what) { throw Error(code, what); }

void require_gamma_q(QParam q) {
  if (std::abs(1.0 - q.value()) < kQNearOneGuard)
    fail(Errc::QTooCloseToOne,
         "q = " + std::to_string(q.value()) + " is within 1e-6 of 1; use the classical functions");
}

}  // namespace

QParam::QParam(double q) : q_(q), regime_(q < 1.0 ? Regime::SubUnit : Regime::SuperUnit) {
  if (!std::isfinite(q) || q <= 0.0 || q == 1.0)
    fail(Errc::DomainError, "q must be finite, positive and different from 1, got " + std::to_string(q));
}

Precision::Precision(double tol, std::int64_t terms) : rel_tol(tol), max_terms(terms) {
  if (!(tol > 0.0 && tol < 1e-3))
    fail(Errc::DomainError, "rel_tol must lie in (0, 1e-3)");
  if (terms < 64)
    fail(Errc::DomainError, "max_terms must be at least 64");
}

LogValue LogValue::from_value(double positive) {
  if (!(positive > 0.0) || !std::isfinite(positive))
    fail(Errc::DomainError, "LogValue holds finite positive reals only");
  return LogValue{std::log(positive)};
}

double q_integer(std::int64_t m, QParam q) {
  if (m < 1) fail(Errc::DomainError, "q_integer needs m >= 1");
  const double qv = q.value();
  if (std::abs(1.0 - qv) < kQNearOneGuard) {
    CompensatedSum sum;
    double power = 1.0;
    for (std::int64_t k = 0; k < m; ++k) {
      sum += power;
      power *= qv;
    }
    return sum.value();
  }
  const double lq = std::log(qv);
  return std::expm1(static_cast<double>(m) * lq) / std::expm1(lq);
}

double log_q_integer(double x, QParam q) {
  if (!(x > 0.0) || !std::isfinite(x)) fail(Errc::DomainError, "log_q_integer needs finite x > 0");
  const double lq = std::log(q.value());
  if (q.sub_unit()) return std::log(std::expm1(x * lq) / std::expm1(lq));
  // q > 1: factor out q^x so nothing overflows for large x.
  return x * lq + std::log(-std::expm1(-x * lq)) - std::log(std::expm1(lq));
}

LogValue q_factorial(std::int64_t n, QParam q) {
  if (n < 0) fail(Errc::DomainError, "q_factorial needs n >= 0");
  CompensatedSum sum;
  for (std::int64_t k = 2; k <= n; ++k) sum += log_q_integer(static_cast<double>(k), q);
  return LogValue{sum.value()};
}

LogValue q_pochhammer_inf(double a, QParam q, const Precision& prec) {
  if (!q.sub_unit()) fail(Errc::DomainError, "(a;q)_inf converges only for 0 < q < 1");
  if (!std::isfinite(a)) fail(Errc::DomainError, "a must be finite");
  const double qv = q.value();
  const double one_minus_q = 1.0 - qv;

  CompensatedSum sum;
  for (std::int64_t n = 0;; ++n) {
    if (n >= prec.max_terms)
      fail(Errc::TermCapExceeded, "(a;q)_inf needs more than " + std::to_string(prec.max_terms) +
                                      " factors at q = " + std::to_string(qv));
    const double t = a * std::pow(qv, static_cast<double>(n));
    if (1.0 - t <= 0.0)
      fail(Errc::NonPositiveFactor, "factor " + std::to_string(n) + " of (a;q)_inf is not positive");
    sum += std::log1p(-t);

    const double next = a * std::pow(qv, static_cast<double>(n + 1));
    const double tail = std::abs(next) / (one_minus_q * std::min(1.0, 1.0 - next));
    if (tail < prec.rel_tol) break;
  }
  return LogValue{sum.value()};
}

LogValue log_q_gamma(double x, QParam q, const Precision& prec) {
  if (!(x > 0.0) || !std::isfinite(x)) fail(Errc::DomainError, "log_q_gamma needs finite x > 0");
  require_gamma_q(q);
  const double qv = q.value();

  if (q.sub_unit()) {
    const double num = q_pochhammer_inf(qv, q, prec).log_magnitude;
    const double den = q_pochhammer_inf(std::pow(qv, x), q, prec).log_magnitude;
    return LogValue{num - den + (1.0 - x) * std::log1p(-qv)};
  }

  const QParam inv(1.0 / qv);
  const double r = inv.value();
  const double num = q_pochhammer_inf(r, inv, prec).log_magnitude;
  const double den = q_pochhammer_inf(std::pow(r, x), inv, prec).log_magnitude;
  // q^C(x,2) with C(x,2) = x(x-1)/2 for real x.
  return LogValue{num - den + (1.0 - x) * std::log(qv - 1.0) + 0.5 * x * (x - 1.0) * std::log(qv)};
}

MoakApprox moak_log_gamma_approx(std::int64_t n, QParam q) {
  if (!q.sub_unit()) fail(Errc::DomainError, "the reduced q-Stirling form needs 0 < q < 1");
  if (n < 1) fail(Errc::DomainError, "moak_log_gamma_approx needs n >= 1");
  const double nd = static_cast<double>(n);
  // (q^(n+1) - 1)/(q - 1) is [n+1]_q.
  return MoakApprox{(nd + 0.5) * log_q_integer(nd + 1.0, q), -nd * std::log1p(-q.value())};
}

}  // namespace qsandor
