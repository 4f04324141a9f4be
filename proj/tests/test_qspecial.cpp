#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qsandor/error.hpp"
#include "qsandor/qspecial.hpp"

using namespace qsandor;

namespace {

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected qsandor::Error");
  return Errc::SpecError;
}

}  // namespace

TEST_SUITE("qspecial") {
  TEST_CASE("QParam validation and regime") {
    CHECK(QParam(0.5).regime() == Regime::SubUnit);
    CHECK(QParam(2.0).regime() == Regime::SuperUnit);
    CHECK(error_of([] { (void)QParam(1.0); }) == Errc::DomainError);
    CHECK(error_of([] { (void)QParam(0.0); }) == Errc::DomainError);
    CHECK(error_of([] { (void)QParam(-0.5); }) == Errc::DomainError);
    CHECK(error_of([] { (void)QParam(NAN); }) == Errc::DomainError);
    CHECK(error_of([] { (void)QParam(INFINITY); }) == Errc::DomainError);
  }

  TEST_CASE("Precision validation") {
    CHECK(Precision().rel_tol == 1e-12);
    CHECK(Precision().max_terms == 10000);
    CHECK(error_of([] { (void)Precision(0.0); }) == Errc::DomainError);
    CHECK(error_of([] { (void)Precision(1e-3); }) == Errc::DomainError);
    CHECK(error_of([] { (void)Precision(1e-10, 63); }) == Errc::DomainError);
    CHECK_NOTHROW(Precision(1e-10, 64));
  }

  TEST_CASE("q_integer examples") {
    CHECK(q_integer(1, QParam(0.5)) == 1.0);
    CHECK(q_integer(3, QParam(0.5)) == doctest::Approx(1.75).epsilon(1e-15));
    CHECK(q_integer(2, QParam(2.0)) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(error_of([] { q_integer(0, QParam(0.5)); }) == Errc::DomainError);
  }

  TEST_CASE("q_integer near q = 1 uses the explicit sum") {
    for (double q : {1.0 - 5e-7, 1.0 + 5e-7, 1.0 - 1e-9}) {
      for (std::int64_t m : {1, 2, 7, 100, 1000}) {
        CHECK(oracle::rel_err(q_integer(m, QParam(q)), oracle::q_int(m, q)) < 1e-13);
      }
    }
  }

  TEST_CASE("q_integer matches the geometric sum on random inputs") {
    oracle::Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
      const double q = rng.uniform(0, 1) < 0.5 ? rng.uniform(0.01, 0.999) : rng.uniform(1.001, 3.0);
      const auto m = rng.integer(1, 60);
      CHECK(oracle::rel_err(q_integer(m, QParam(q)), oracle::q_int(m, q)) < 1e-12);
    }
  }

  TEST_CASE("log_q_integer agrees with q_integer at integers and survives huge x") {
    for (double q : {0.1, 0.5, 0.9, 2.0, 5.0})
      for (std::int64_t m = 1; m <= 40; ++m)
        CHECK(std::abs(log_q_integer(static_cast<double>(m), QParam(q)) - std::log(q_integer(m, QParam(q)))) < 1e-12);
    // q > 1 with x large: [x]_q = q^x/(q-1) up to exp(-x log q).
    CHECK(log_q_integer(2000.0, QParam(2.0)) == doctest::Approx(2000.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(log_q_integer(1e6, QParam(0.5)) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(error_of([] { log_q_integer(0.0, QParam(0.5)); }) == Errc::DomainError);
  }

  TEST_CASE("q_factorial examples") {
    CHECK(q_factorial(0, QParam(0.5)).log_magnitude == 0.0);
    CHECK(q_factorial(3, QParam(0.5)).log_magnitude == doctest::Approx(std::log(2.625)).epsilon(1e-14));
    CHECK(std::abs(q_factorial(3, QParam(0.9999)).value() - 6.0) / 6.0 < 1e-3);
    CHECK(error_of([] { q_factorial(-1, QParam(0.5)); }) == Errc::DomainError);
  }

  TEST_CASE("q_pochhammer_inf examples") {
    CHECK(q_pochhammer_inf(0.0, QParam(0.5)).log_magnitude == 0.0);
    const double half = q_pochhammer_inf(0.5, QParam(0.5)).value();
    CHECK(std::abs(half - 0.2887880951) < 1e-10);
    CHECK(std::abs(half - std::exp(static_cast<double>(oracle::log_poch(0.5L, 0.5L, 60)))) / half < 1e-12);
    const double quarter = q_pochhammer_inf(0.25, QParam(0.5)).log_magnitude;
    CHECK(std::abs(quarter - static_cast<double>(oracle::log_poch(0.25L, 0.5L, 60))) < 1e-12);
  }

  TEST_CASE("q_pochhammer_inf errors") {
    CHECK(error_of([] { q_pochhammer_inf(0.5, QParam(2.0)); }) == Errc::DomainError);
    CHECK(error_of([] { q_pochhammer_inf(1.0, QParam(0.5)); }) == Errc::NonPositiveFactor);
    CHECK(error_of([] { q_pochhammer_inf(4.0, QParam(0.5)); }) == Errc::NonPositiveFactor);
    CHECK(error_of([] { q_pochhammer_inf(0.5, QParam(0.9999)); }) == Errc::TermCapExceeded);
    CHECK_NOTHROW(q_pochhammer_inf(0.5, QParam(0.9999), Precision(1e-12, 1'000'000)));
    // Negative a gives factors above 1.
    CHECK(std::abs(q_pochhammer_inf(-1.0, QParam(0.5)).log_magnitude -
                   static_cast<double>(oracle::log_poch(-1.0L, 0.5L, 80))) < 1e-12);
  }

  TEST_CASE("log_q_gamma examples") {
    CHECK(std::abs(log_q_gamma(1.0, QParam(0.5)).log_magnitude) < 1e-14);
    CHECK(std::abs(log_q_gamma(2.0, QParam(0.5)).log_magnitude) < 1e-14);
    CHECK(log_q_gamma(4.0, QParam(0.5)).log_magnitude ==
          doctest::Approx(std::log(q_integer(2, QParam(0.5)) * q_integer(3, QParam(0.5)))).epsilon(1e-13));
    CHECK(std::abs(log_q_gamma(1.0, QParam(3.0)).log_magnitude) < 1e-14);
  }

  TEST_CASE("log_q_gamma errors") {
    CHECK(error_of([] { log_q_gamma(0.0, QParam(0.5)); }) == Errc::DomainError);
    CHECK(error_of([] { log_q_gamma(-1.5, QParam(0.5)); }) == Errc::DomainError);
    CHECK(error_of([] { log_q_gamma(2.0, QParam(1.0 - 5e-7)); }) == Errc::QTooCloseToOne);
    CHECK(error_of([] { log_q_gamma(2.0, QParam(1.0 + 5e-7)); }) == Errc::QTooCloseToOne);
  }

  TEST_CASE("log_q_gamma matches the defining products") {
    oracle::Rng rng(5);
    for (int i = 0; i < 500; ++i) {
      const double q = rng.uniform(0.05, 0.9);
      const double x = rng.uniform(0.05, 30.0);
      const int terms = static_cast<int>(std::ceil(60.0 / -std::log10(q))) + 10;
      const double want = static_cast<double>(oracle::log_q_gamma(x, q, terms));
      CHECK(std::abs(log_q_gamma(x, QParam(q)).log_magnitude - want) < 1e-10 * std::max(1.0, std::abs(want)));
    }
  }

  TEST_CASE("property: recurrence in both regimes") {
    for (double q : {0.1, 0.5, 0.9, 2.0, 5.0}) {
      const QParam qp(q);
      for (double x = 0.5; x <= 20.0; x += 0.5) {
        const double lhs = log_q_gamma(x + 1.0, qp).log_magnitude - log_q_gamma(x, qp).log_magnitude;
        CHECK(std::abs(lhs - log_q_integer(x, qp)) < 1e-10);
      }
    }
    oracle::Rng rng(17);
    for (int i = 0; i < 1000; ++i) {
      const double q = rng.uniform(0, 1) < 0.5 ? rng.uniform(0.02, 0.95) : rng.uniform(1.05, 8.0);
      const double x = rng.uniform(0.01, 25.0);
      const QParam qp(q);
      const double lhs = log_q_gamma(x + 1.0, qp).log_magnitude - log_q_gamma(x, qp).log_magnitude;
      CHECK(std::abs(lhs - log_q_integer(x, qp)) < 1e-10);
    }
  }

  TEST_CASE("property: q-gamma at integers is the q-factorial") {
    for (double q : {0.1, 0.5, 0.9})
      for (std::int64_t n = 0; n <= 50; ++n) {
        const double g = log_q_gamma(static_cast<double>(n + 1), QParam(q)).log_magnitude;
        CHECK(std::abs(g - q_factorial(n, QParam(q)).log_magnitude) < 1e-10);
        CHECK(std::abs(g - static_cast<double>(oracle::log_q_fact(n, q))) < 1e-10);
      }
  }

  TEST_CASE("property: classical limit as q -> 1-") {
    const Precision wide(1e-12, 5'000'000);
    // At q = 0.9999 the exact q-factorial already differs from n! by about
    // (1-q) n(n-1)/4 in log; the computed value must track that exactly.
    for (int x = 2; x <= 10; ++x) {
      const double got = log_q_gamma(x, QParam(0.9999), wide).log_magnitude;
      CHECK(std::abs(got - static_cast<double>(oracle::log_q_fact(x - 1, 0.9999L))) < 1e-9);
      const double rel = std::abs(std::exp(got - std::lgamma(x)) - 1.0);
      if (x <= 7) CHECK(rel < 1e-3);
    }
    // The gap closes linearly in 1 - q.
    for (double eps : {1e-3, 1e-4, 1e-5}) {
      const double got = log_q_gamma(10.0, QParam(1.0 - eps), wide).log_magnitude;
      CHECK(std::abs(got - std::lgamma(10.0)) / eps == doctest::Approx(9.0 * 8.0 / 4.0).epsilon(0.02));
    }
  }

  TEST_CASE("property: truncation soundness under tolerance halving") {
    oracle::Rng rng(23);
    for (int i = 0; i < 400; ++i) {
      const double q = rng.uniform(0.05, 0.97);
      const double a = rng.uniform(-2.0, 0.99);
      double tol = rng.log_uniform(1e-12, 1e-4);
      const Precision coarse(tol, 1'000'000);
      const Precision fine(tol / 2, 1'000'000);
      const double c = q_pochhammer_inf(a, QParam(q), coarse).log_magnitude;
      const double f = q_pochhammer_inf(a, QParam(q), fine).log_magnitude;
      CHECK(std::abs(std::expm1(c - f)) <= tol);
    }
  }

  TEST_CASE("property: truncated product is within rel_tol of a long reference") {
    oracle::Rng rng(29);
    for (int i = 0; i < 300; ++i) {
      const double q = rng.uniform(0.05, 0.9);
      const double a = rng.uniform(-1.0, 0.99);
      const double tol = rng.log_uniform(1e-12, 1e-5);
      const double got = q_pochhammer_inf(a, QParam(q), Precision(tol)).log_magnitude;
      const double ref = static_cast<double>(oracle::log_poch(a, q, 2000));
      CHECK(std::abs(std::expm1(got - ref)) <= tol * 1.0001 + 1e-15);
    }
  }

  TEST_CASE("Moak reduced forms") {
    const auto one = moak_log_gamma_approx(1, QParam(0.5));
    CHECK(one.coarse == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(moak_log_gamma_approx(50, QParam(0.5)).coarse == doctest::Approx(50 * std::log(2.0)).epsilon(1e-15));
    const double ratio = log_q_gamma(51.0, QParam(0.5)).log_magnitude / moak_log_gamma_approx(50, QParam(0.5)).coarse;
    CHECK(ratio >= 0.9);
    CHECK(ratio <= 1.0);
    // mid = (n + 1/2) log [n+1]_q.
    CHECK(one.mid == doctest::Approx(1.5 * std::log(1.5)).epsilon(1e-14));
    CHECK_THROWS_AS(moak_log_gamma_approx(0, QParam(0.5)), Error);
    CHECK_THROWS_AS(moak_log_gamma_approx(5, QParam(2.0)), Error);
  }

  TEST_CASE("property: Moak ratio tends to 1 monotonically in the tail") {
    const QParam q(0.5);
    double previous = 0.0;
    for (std::int64_t n = 100; n <= 10'000; n *= 10) {
      const double ratio = q_factorial(n, q).log_magnitude / moak_log_gamma_approx(n, q).coarse;
      CHECK(ratio > previous);
      CHECK(ratio < 1.0);
      previous = ratio;
    }
    CHECK(std::abs(previous - 1.0) < 1e-3);
  }

  TEST_CASE("LogValue round trip") {
    CHECK(LogValue::from_value(2.5).value() == doctest::Approx(2.5).epsilon(1e-15));
    CHECK_THROWS_AS(LogValue::from_value(0.0), Error);
    CHECK_THROWS_AS(LogValue::from_value(-1.0), Error);
  }
}
