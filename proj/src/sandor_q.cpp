#include "qsandor/sandor_q.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qsandor/compensated_sum.hpp"
#include "qsandor/error.hpp"

namespace qsandor {

namespace {

constexpr double kMaxIndex = 9.0e15;

[[noreturn]] void fail(Errc code, const std::string& what) { throw Error(code, what); }

QParam require_sub_unit(QParam q) {
  if (!q.sub_unit()) fail(Errc::DomainError, "the q-analogues are defined for 0 < q < 1 only");
  return q;
}

void require_finite(double x) {
  if (!std::isfinite(x)) fail(Errc::DomainError, "argument must be finite");
}

void require_below_sup(const QTriangularLadder& ladder, double x) {
  if (x >= ladder.sup())
    fail(Errc::SupExceeded, "x = " + std::to_string(x) + " is not below the ladder supremum " +
                                std::to_string(ladder.sup()) + "; no index attains it");
}

// Converged value of sum_{k>=1} log(1-q^k) under the same cutoff rule as
// log_q_gamma_int.
double log_q_product_tail_sum(QParam q, const Precision& prec, std::int64_t limit) {
  const double qv = q.value();
  CompensatedSum sum;
  for (std::int64_t k = 1; k <= limit; ++k) {
    const double term = std::log1p(-std::pow(qv, static_cast<double>(k)));
    if (std::abs(term) < prec.rel_tol) break;
    sum += term;
  }
  return sum.value();
}

// Largest m >= 1 with log Γ_q(m+1) <= target, target >= 0.
std::int64_t max_gamma_index(double target, QParam q, const Precision& prec) {
  const double c = -std::log1p(-q.value());  // log(1/(1-q)) > 0
  const double floor_sum = log_q_product_tail_sum(q, prec, std::numeric_limits<std::int64_t>::max());

  // Since sum_{k<=m} log(1-q^k) lies in [floor_sum, 0]:
  //   m <= target / c          implies log Γ_q(m+1) <= target,
  //   m >  (target - floor_sum) / c  implies log Γ_q(m+1) > target.
  const double upper = (target - floor_sum) / c;
  if (!(upper < kMaxIndex)) fail(Errc::DomainError, "P_q index exceeds the representable range");

  auto lg = [&](std::int64_t m) { return log_q_gamma_int(m, q, prec); };
  std::int64_t lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(target / c)));
  std::int64_t hi = static_cast<std::int64_t>(std::floor(upper)) + 2;
  while (lo > 1 && lg(lo) > target) --lo;
  while (lg(hi) <= target) ++hi;
  // Invariant: lg(lo) <= target < lg(hi).
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (lg(mid) <= target ? lo : hi) = mid;
  }
  return lo;
}

void require_base(double p) {
  if (!std::isfinite(p) || !(p > 1.0)) fail(Errc::DomainError, "base p must be finite and > 1");
}

}  // namespace

QTriangularLadder::QTriangularLadder(QParam q)
    : q_(require_sub_unit(q)),
      log_q_(std::log(q.value())),
      denom_(2.0 * (1.0 - q.value()) * (1.0 - q.value())) {}

double QTriangularLadder::operator()(std::int64_t m) const {
  if (m < 1) fail(Errc::DomainError, "ladder index must be >= 1");
  const double md = static_cast<double>(m);
  const double a = -std::expm1(md * log_q_);          // 1 - q^m
  const double b = -std::expm1((md + 1.0) * log_q_);  // 1 - q^(m+1)
  return (a * b) / denom_;
}

std::vector<double> QTriangularLadder::values(std::size_t count) const {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t m = 1; m <= count; ++m) out.push_back((*this)(static_cast<std::int64_t>(m)));
  return out;
}

std::int64_t QTriangularLadder::seed_index(double x) const {
  // T_q(m) = x is (1-y)(1-qy) = 2x(1-q)^2 in y = q^m; its smaller root,
  // rationalised so nothing cancels near x = sup.
  const double q = q_.value();
  const double s = std::sqrt(1.0 + 8.0 * x * q);
  const double y = 2.0 * (1.0 - x / sup()) / ((1.0 + q) + (1.0 - q) * s);
  if (!(y > 0.0)) return static_cast<std::int64_t>(kMaxIndex);
  if (y >= 1.0) return 1;
  const double k = std::log(y) / log_q_;
  return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(k)), 1,
                                  static_cast<std::int64_t>(kMaxIndex));
}

std::int64_t QTriangularLadder::star_index(double x) const {
  std::int64_t m = seed_index(x);
  while ((*this)(m + 1) <= x) ++m;
  while (m > 1 && (*this)(m) > x) --m;
  return m;
}

std::int64_t QTriangularLadder::min_index(double x) const {
  if (x <= first()) return 1;
  const std::int64_t m = star_index(x);
  return (*this)(m) == x ? m : m + 1;
}

double q_triangular(std::int64_t m, QParam q) { return QTriangularLadder(q)(m); }

std::int64_t z_q_index(double x, QParam q) {
  const QTriangularLadder ladder(q);
  require_finite(x);
  if (!(x > 0.0)) fail(Errc::DomainError, "Z_q(x) is defined for x > 0");
  require_below_sup(ladder, x);
  return ladder.min_index(x);
}

std::int64_t z_q_star_index(double x, QParam q) {
  const QTriangularLadder ladder(q);
  require_finite(x);
  if (!(x >= ladder.first()))
    fail(Errc::DomainError, "Z_q*(x) is defined for x >= (1+q)/2 = " + std::to_string(ladder.first()));
  require_below_sup(ladder, x);
  return ladder.star_index(x);
}

double z_q(double x, QParam q) { return q_integer(z_q_index(x, q), q); }

double z_q_star(double x, QParam q) { return q_integer(z_q_star_index(x, q), q); }

QBoundPair z_q_star_bounds(double x, QParam q) {
  const QTriangularLadder ladder(q);
  require_finite(x);
  if (!(x >= ladder.first()))
    fail(Errc::DomainError, "the Z_q* bounds need x >= (1+q)/2 = " + std::to_string(ladder.first()));
  const double qv = q.value();
  const double s = std::sqrt(1.0 + 8.0 * x * qv);
  // Both numerators rationalised: s - 1 = 8xq/(s+1), s - (1+2q) = 4q(2x-1-q)/(s+1+2q).
  return QBoundPair{2.0 * (2.0 * x - 1.0 - qv) / (qv * (s + 1.0 + 2.0 * qv)), 4.0 * x / (s + 1.0)};
}

double log_q_gamma_int(std::int64_t m, QParam q, const Precision& prec) {
  require_sub_unit(q);
  if (m < 0) fail(Errc::DomainError, "log_q_gamma_int needs m >= 0");
  const double partial = log_q_product_tail_sum(q, prec, m);
  return partial - static_cast<double>(m) * std::log1p(-q.value());
}

std::int64_t p_q_star(double x, QParam q, double p, const Precision& prec) {
  require_sub_unit(q);
  require_finite(x);
  require_base(p);
  if (!(x >= 1.0)) fail(Errc::DomainError, "P_q*(x) is defined for x >= 1");
  return max_gamma_index(x * std::log(p), q, prec);
}

std::int64_t p_q(double x, QParam q, double p, const Precision& prec) {
  require_sub_unit(q);
  require_finite(x);
  require_base(p);
  if (!(x > 0.0)) fail(Errc::DomainError, "P_q(x) is defined for x > 0");
  const double target = x * std::log(p);
  const std::int64_t m = max_gamma_index(target, q, prec);
  return log_q_gamma_int(m, q, prec) == target ? m : m + 1;
}

double p_q_star_asymptote(double x, QParam q, double p) {
  require_sub_unit(q);
  require_finite(x);
  require_base(p);
  if (!(x >= 1.0)) fail(Errc::DomainError, "the P_q* asymptote is taken for x >= 1");
  return x * std::log(p) / -std::log1p(-q.value());
}

bool sandwich_check(double x, QParam q) {
  const std::int64_t star = z_q_star_index(x, q);
  const std::int64_t low = z_q_index(x, q);
  const double zs = q_integer(star, q);
  const double z = q_integer(low, q);
  return zs <= z && z <= zs + 1.0;
}

bool sandwich_check_p(double x, QParam q, double p, const Precision& prec) {
  const std::int64_t star = p_q_star(x, q, p, prec);
  const std::int64_t low = p_q(x, q, p, prec);
  return star <= low && low <= star + 1;
}

}  // namespace qsandor
