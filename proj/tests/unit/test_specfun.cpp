#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#ifdef ROTOR_HAVE_BOOST
#include <boost/math/special_functions/bessel.hpp>
#endif

#include "rotor/specfun.hpp"

using rotor::specfun::bessel_j;
using rotor::specfun::bessel_j_batch;

namespace {

// Power series in long double, for small arguments.
long double series_j0(long double x) {
  long double term = 1.0L, sum = 1.0L;
  const long double h2 = x * x / 4.0L;
  for (int k = 1; k < 80; ++k) {
    term *= -h2 / (static_cast<long double>(k) * k);
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_SUITE("specfun") {
  TEST_CASE("values at zero") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(3, 0.0) == 0.0);
    CHECK(bessel_j(-7, 0.0) == 0.0);
  }

  TEST_CASE("first zero of J_0") {
    const double x = 2.404825557695773;
    CHECK(std::fabs(bessel_j(0, x)) <= 1e-12);
    CHECK(std::fabs(bessel_j(0, x) - static_cast<double>(series_j0(x))) <= 1e-15);
  }

  TEST_CASE("reflection is bit exact") {
    CHECK(bessel_j(-1, 1.5) == -bessel_j(1, 1.5));
    for (const double x : {0.3, 1.0, 4.7, 33.0, 512.0, 1999.0}) {
      for (int n = 0; n <= 60; ++n) {
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        CHECK(bessel_j(-n, x) == sign * bessel_j(n, x));
      }
    }
  }

  TEST_CASE("batch") {
    CHECK(bessel_j_batch({2}, 0.0) == std::vector<double>{1.0, 0.0, 0.0});
    const auto b = bessel_j_batch({5}, 1.0);
    REQUIRE(b.size() == 6);
    for (int n = 0; n <= 5; ++n) CHECK(b[static_cast<std::size_t>(n)] == bessel_j(n, 1.0));

    const auto c = bessel_j_batch({50}, 10.0);
    double sum = c[0] * c[0];
    for (int n = 1; n <= 50; ++n) sum += 2.0 * c[static_cast<std::size_t>(n)] * c[static_cast<std::size_t>(n)];
    CHECK(std::fabs(sum - 1.0) <= 1e-10);

    for (const double x : {0.25, 1.0, 3.0, 17.5, 250.0}) {
      const auto all = bessel_j_batch({80}, x);
      for (int n = 0; n <= 80; ++n) CHECK(all[static_cast<std::size_t>(n)] == bessel_j(n, x));
    }
  }

  TEST_CASE("sum of squares") {
    for (const double x : {0.0, 0.5, 1.0, 10.0, 63.2, 100.0, 777.0, 1000.0, 2000.0}) {
      const int n_max = static_cast<int>(x + 20.0 * std::cbrt(x)) + 40;
      const auto j = bessel_j_batch({n_max}, x);
      double sum = j[0] * j[0];
      for (int n = 1; n <= n_max; ++n) sum += 2.0 * j[static_cast<std::size_t>(n)] * j[static_cast<std::size_t>(n)];
      CHECK_MESSAGE(std::fabs(sum - 1.0) <= 1e-10, "x = " << x);
    }
  }

  TEST_CASE("recurrence residual") {
    for (const double x : {0.1, 0.9, 1.1, 5.0, 42.0, 300.0, 2000.0}) {
      const int n_max = static_cast<int>(x) + 40;
      const auto j = bessel_j_batch({n_max}, x);
      for (int n = 1; n < n_max; ++n) {
        const auto i = static_cast<std::size_t>(n);
        const double r = std::fabs(j[i - 1] + j[i + 1] - (2.0 * n / x) * j[i]);
        CHECK_MESSAGE(r <= 1e-10 * std::max(1.0, std::fabs(j[i])), "n = " << n << ", x = " << x);
      }
    }
  }

#ifdef ROTOR_HAVE_BOOST
  TEST_CASE("agrees with an independent implementation") {
    for (const int n : {0, 1, 2, 3, 7, 20, 50, 150, 600, 1000, 2000}) {
      for (const double x : {1e-3, 0.5, 1.0, 2.5, 9.9, 10.5, 75.0, 333.3, 999.0, 1500.0, 2000.0}) {
        const double ours = bessel_j(n, x);
        const double ref = boost::math::cyl_bessel_j(n, x);
        const double abs_err = std::fabs(ours - ref);
        const bool ok = abs_err <= 1e-14 || abs_err <= 1e-12 * std::fabs(ref);
        CHECK_MESSAGE(ok, "n = " << n << ", x = " << x << ", ours = " << ours << ", ref = " << ref);
      }
    }
  }
#endif

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(bessel_j(0, -1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_j(0, std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    CHECK_THROWS_AS(bessel_j(0, std::numeric_limits<double>::infinity()), std::domain_error);
    CHECK_THROWS_AS(bessel_j(20001, 1.0), std::out_of_range);
    CHECK_THROWS_AS(bessel_j(-20001, 1.0), std::out_of_range);
    CHECK_NOTHROW(bessel_j(20000, 1.0));
    CHECK_THROWS_AS(bessel_j_batch({-1}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bessel_j_batch({3}, -0.5), std::domain_error);
  }
}
