#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rotor/born.hpp"
#include "rotor/kinematics.hpp"
#include "rotor/oracle.hpp"
#include "rotor/potentials.hpp"
#include "rotor/specfun.hpp"

using namespace rotor;
using namespace rotor::oracle;

TEST_SUITE("oracle") {
  TEST_CASE("single peak transforms") {
    const auto g = PeakShape::gaussian(1.0, 1.0);
    const auto at0 = ft_numeric(g, 0.0, 0.0);
    CHECK(std::fabs(at0.real() - 0.5) <= 1e-12);
    CHECK(std::fabs(at0.imag()) <= 1e-14);
    const double expected = 0.5 * std::exp(-0.25);
    CHECK(std::fabs(ft_numeric(g, 0.6, -0.8).real() - expected) <= 1e-12);

    const auto pg = PeakShape::polynomial_gaussian(1.0, 1.0);
    CHECK(std::abs(ft_numeric(pg, 0.0, 0.0)) <= 1e-12);
    // V0 q^2 D^4 / 8 exp(-q^2 D^2 / 4) at q = 2, D = 1.5
    const auto pg2 = PeakShape::polynomial_gaussian(0.7, 1.5);
    const double q = 2.0;
    const double ref = 0.7 * q * q * std::pow(1.5, 4) / 8.0 * std::exp(-q * q * 2.25 / 4.0);
    CHECK(std::fabs(ft_numeric(pg2, 0.0, q).real() - ref) <= 1e-12);
  }

  TEST_CASE("agrees with the analytic transforms on a sweep") {
    for (const auto v : {PeakVariant::gaussian, PeakVariant::polynomial_gaussian}) {
      const PeakShape shape(v, 1.3, 0.8);
      for (int i = 0; i <= 20; ++i) {
        const double q = 0.5 * i;
        const double dir = 0.37 * i;
        const double qx = q * std::cos(dir), qy = q * std::sin(dir);
        const auto num = ft_numeric(shape, qx, qy, {.precision = Precision::standard});
        const double exact = potentials::ft_peak(shape, q);
        CHECK(std::fabs(num.real() - exact) <= 1e-12 + 1e-9 * std::fabs(exact));
        CHECK(std::fabs(num.imag()) <= 1e-12);
      }
    }
  }

  TEST_CASE("extended and standard precision agree") {
    const auto shape = PeakShape::polynomial_gaussian(1.0, 2.0);
    const auto a = ft_numeric(shape, 1.1, 2.3, {.precision = Precision::standard});
    const auto b = ft_numeric(shape, 1.1, 2.3, {.precision = Precision::extended});
    CHECK(std::abs(a - b) <= 1e-13);
  }

  TEST_CASE("total transform carries the peak phases") {
    const auto g = PeakShape::gaussian(1.0, 1.0);
    const PotentialSpec spec({{-2.0, g}, {2.0, g}});
    const auto num = ft_total_numeric(spec, 0.9, 0.4);
    const auto ref = potentials::ft_total(spec, 0.9, 0.4);
    CHECK(std::abs(num - ref) <= 1e-12);
  }

  TEST_CASE("angular integral reproduces the Bessel factor") {
    // Both atoms: 2 pi [1 + (-1)^n] exp(-i n mu) J_n(alpha |q|)
    const double k = 2.0, theta = 0.9, alpha = 1.3;
    for (const int n : {0, 2, -2, 4}) {
      const auto g = kinematics::geometry(k, k, theta);
      const double expected = 4.0 * std::numbers::pi * std::fabs(specfun::bessel_j(n, alpha * g.q_mag));
      CHECK(std::fabs(std::abs(angular_integral(k, k, theta, alpha, n)) - expected) <= 1e-12);
    }
    CHECK(std::abs(angular_integral(k, k, theta, alpha, 1)) <= 1e-13);
  }

  TEST_CASE("matrix element quadrature matches the engine") {
    const PotentialSpec spec({{-1.5, PeakShape::gaussian(1.0, 1.0)},
                              {1.5, PeakShape::polynomial_gaussian(1.0, 1.0)}});
    const Molecule mol(1.0, 1.0);
    for (const int lp : {0, 2, -2}) {
      const auto kappa = kinematics::outgoing_wavenumber(3.0, 0, lp, mol);
      REQUIRE(kappa);
      const auto num = matrix_element_quadrature(spec, mol, 3.0, 0.7, 0, lp, *kappa,
                                                 {.precision = Precision::standard});
      const auto ref = born::matrix_element(spec, mol, 3.0, 0.7, 0, lp, *kappa);
      CHECK(std::abs(num - ref) <= 1e-12 + 1e-10 * std::abs(ref));
    }
  }

  TEST_CASE("budget and argument errors") {
    const auto g = PeakShape::gaussian(1.0, 1.0);
    CHECK_THROWS_AS(ft_numeric(g, 3.0, 1.0, {.max_nodes = 64 * 64, .precision = Precision::standard}),
                    OracleFailure);
    CHECK_THROWS_AS(ft_numeric(g, 0.0, 0.0, {.node_count = 100}), std::invalid_argument);
    CHECK_THROWS_AS(ft_numeric(g, 0.0, 0.0, {.node_count = 32}), std::invalid_argument);
    CHECK_THROWS_AS(angular_integral(2.0, 2.0, 0.5, 40.0, 0, {.max_nodes = 64}), OracleFailure);
  }
}
