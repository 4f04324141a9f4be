#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "qsandor/error.hpp"
#include "qsandor/sandor_classic.hpp"

using namespace qsandor;

namespace {

bool raises(Errc code, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_SUITE("sandor-classic") {
  TEST_CASE("S and S* examples") {
    CHECK(s_of(2) == 2);
    CHECK(s_of(10) == 4);
    CHECK(s_of(720) == 6);
    CHECK(s_star(1) == 1);
    CHECK(s_star(10) == 3);
    CHECK(s_star(24) == 4);
  }

  TEST_CASE("Z and Z* examples") {
    CHECK(z_star(1) == 1);
    CHECK(z_star(10) == 4);
    CHECK(z_of(10) == 4);
    CHECK(z_of(0.5) == 1);
  }

  TEST_CASE("P and P* examples") {
    CHECK(p_star(1, 2) == 2);
    CHECK(p_star(3, 2) == 3);
    CHECK(p_of(3, 2) == 4);
  }

  TEST_CASE("domain errors") {
    CHECK(raises(Errc::DomainError, [] { s_of(1.0); }));
    CHECK(raises(Errc::DomainError, [] { s_star(0.5); }));
    CHECK(raises(Errc::DomainError, [] { z_of(0.0); }));
    CHECK(raises(Errc::DomainError, [] { z_star(0.999); }));
    CHECK(raises(Errc::DomainError, [] { p_of(0.0, 2.0); }));
    CHECK(raises(Errc::DomainError, [] { p_star(0.5, 2.0); }));
    CHECK(raises(Errc::DomainError, [] { p_star(2.0, 1.0); }));
    CHECK(raises(Errc::DomainError, [] { z_star(std::numeric_limits<double>::quiet_NaN()); }));
    CHECK(raises(Errc::DomainError, [] { s_star(std::numeric_limits<double>::infinity()); }));
  }

  TEST_CASE("exact thresholds are inclusive") {
    for (int m = 1; m <= 18; ++m) {
      const double f = static_cast<double>(oracle::factorial(m));
      if (m >= 2) CHECK(s_of(f) == m);
      CHECK(s_star(f) == m);
      if (m >= 2) CHECK(s_star(std::nextafter(f, 0.0)) == m - 1);
    }
    for (std::int64_t m = 1; m <= 5000; ++m) {
      CHECK(z_star(triangular(m)) == m);
      CHECK(z_of(triangular(m)) == m);
    }
  }

  TEST_CASE("large arguments") {
    // 20! = 2432902008176640000 is exact in double; 21! is not.
    CHECK(s_star(2432902008176640000.0) == 20);
    CHECK(s_star(1e300) == 166);  // 166! ~ 9.0e297, 167! ~ 1.5e300
    CHECK(s_of(1e300) == 167);
    CHECK(z_star(1e16) == oracle::z_star(1e16));
    CHECK(p_star(1000, 2) == oracle::p_star(1000, 2));
  }

  TEST_CASE("property: agreement with brute force") {
    oracle::Rng rng(101);
    for (int i = 0; i < 3000; ++i) {
      const double x = rng.log_uniform(1.0, 1e18);
      CHECK(s_star(x) == oracle::s_star(x));
      if (x > 1.0) CHECK(s_of(x) == oracle::s_of(x));
    }
    for (int i = 0; i < 3000; ++i) {
      const double x = rng.log_uniform(1.0, 1e8);
      CHECK(z_star(x) == oracle::z_star(x));
      CHECK(z_of(x) == oracle::z_of(x));
    }
    for (int i = 0; i < 1000; ++i) {
      const double p = rng.log_uniform(1.01, 50.0);
      const double x = rng.log_uniform(1.0, 3000.0);
      CHECK(p_star(x, p) == oracle::p_star(x, p));
      CHECK(p_of(x, p) == oracle::p_of(x, p));
    }
  }

  TEST_CASE("property: z_star closed form against a triangular table") {
    // T(m) for m <= 1e6 covers n <= 1e11.
    std::vector<std::uint64_t> table;
    for (std::uint64_t m = 1; m <= 1'000'001; ++m) table.push_back(m * (m + 1) / 2);
    oracle::Rng rng(7);
    for (int i = 0; i < 100'000; ++i) {
      const auto n = static_cast<std::uint64_t>(rng.integer(1, 100'000'000'000));
      const auto want = static_cast<std::int64_t>(std::upper_bound(table.begin(), table.end(), n) - table.begin());
      REQUIRE(z_star(static_cast<double>(n)) == want);
    }
  }

  TEST_CASE("property: duality F* <= F <= F* + 1") {
    for (std::int64_t n = 2; n <= 20'000; ++n) {
      const double x = static_cast<double>(n);
      CHECK(s_star(x) <= s_of(x));
      CHECK(s_of(x) <= s_star(x) + 1);
      CHECK(z_star(x) <= z_of(x));
      CHECK(z_of(x) <= z_star(x) + 1);
    }
  }

  TEST_CASE("property: monotone in x") {
    oracle::Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
      const double a = rng.log_uniform(1.5, 1e12);
      const double b = a * rng.uniform(1.0, 1.5);
      CHECK(s_of(a) <= s_of(b));
      CHECK(s_star(a) <= s_star(b));
      CHECK(z_of(a) <= z_of(b));
      CHECK(z_star(a) <= z_star(b));
      CHECK(p_of(a / 1e9, 2.0) <= p_of(b / 1e9, 2.0));
      CHECK(p_star(1.0 + a / 1e9, 3.0) <= p_star(1.0 + b / 1e9, 3.0));
    }
  }

  TEST_CASE("log_factorial") {
    for (int m = 0; m <= 170; ++m) CHECK(log_factorial(m) == doctest::Approx(std::lgamma(m + 1.0)).epsilon(1e-13));
    CHECK(log_factorial(1'000'000) == doctest::Approx(std::lgamma(1'000'001.0)).epsilon(1e-14));
  }

  TEST_CASE("asymptotic ratios") {
    CHECK(asymptotic_ratio(AsymptoticKind::T13, 5000) == doctest::Approx(99.0 / (0.5 * std::sqrt(40001.0))).epsilon(1e-14));
    CHECK(asymptotic_ratio(AsymptoticKind::T13, 1) == doctest::Approx(1.0 / 1.5).epsilon(1e-15));
    CHECK(std::abs(asymptotic_ratio(AsymptoticKind::T13, 1e8) - 1.0) <= 1e-4);
    // P*(1e4) at p = 2 is 1146, so log P*/log x is about 0.765: the ratio
    // approaches 1 only slowly.
    const double t15 = std::log(static_cast<double>(oracle::p_star(1e4, 2.0))) / std::log(1e4);
    CHECK(asymptotic_ratio(AsymptoticKind::T15, 1e4, 2.0) == doctest::Approx(t15).epsilon(1e-14));
    CHECK(t15 == doctest::Approx(0.765).epsilon(1e-3));
    // S*(1e12) = 14 over log x / log log x is about 1.68.
    const double lx = std::log(1e12);
    CHECK(asymptotic_ratio(AsymptoticKind::T11, 1e12) == doctest::Approx(14.0 / (lx / std::log(lx))).epsilon(1e-14));
    CHECK(raises(Errc::DomainError, [] { asymptotic_ratio(AsymptoticKind::T11, 2.0); }));
    CHECK(raises(Errc::DomainError, [] { asymptotic_ratio(AsymptoticKind::T15, 1.0); }));
  }

  TEST_CASE("property: S* and P* ratios drift towards 1") {
    auto envelope = [](AsymptoticKind kind, int k_lo, int k_hi) {
      double worst = 0.0;
      for (int k = k_lo; k < k_hi; ++k) worst = std::max(worst, std::abs(asymptotic_ratio(kind, std::pow(10.0, k)) - 1.0));
      return worst;
    };
    CHECK(envelope(AsymptoticKind::T11, 4, 54) > envelope(AsymptoticKind::T11, 250, 300));
    CHECK(envelope(AsymptoticKind::T15, 1, 6) > envelope(AsymptoticKind::T15, 11, 16));
  }
}
