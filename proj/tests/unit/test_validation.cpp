#include <doctest.h>

#include <cmath>

#include "rotor/born.hpp"
#include "rotor/validation.hpp"

using namespace rotor;
using namespace rotor::validation;

TEST_SUITE("validation") {
  TEST_CASE("tally rule") {
    Tally t("x", 1e-6, 1e-12);
    t.compare(1.0, 1.0 + 1e-7, "a");
    t.compare(0.0, 1e-13, "b");
    CHECK(t.result().passed);
    t.compare(1.0, 1.1, "c");
    const auto r = t.result();
    CHECK_FALSE(r.passed);
    CHECK(r.failures == 1);
    CHECK(r.samples == 3);
    CHECK(r.detail.find("c") != std::string::npos);

    Tally strict("y", 1e-6, 1e-3);
    strict.add(1e-4, 1.0, "no-abs", false);
    CHECK_FALSE(strict.result().passed);
  }

  TEST_CASE("fast checks pass") {
    for (const auto& r : run_checks({"bessel", "parity-threshold", "structureless-limit"})) {
      CHECK_MESSAGE(r.passed, r.name << ": " << r.detail);
    }
  }

  TEST_CASE("matrix element check") {
    const auto ok = check_matrix_element(60);
    CHECK_MESSAGE(ok.passed, ok.detail);
    CHECK(ok.samples == 60);

    // A sign flip for negative transfers keeps |M| but breaks the phase.
    const MatrixElementFn broken = [](const PotentialSpec& s, const Molecule& m, double k,
                                      double theta, int li, int lo, double kappa) {
      const auto me = born::matrix_element(s, m, k, theta, li, lo, kappa);
      return li - lo < 0 ? std::conj(me) : me;
    };
    CHECK_FALSE(check_matrix_element(broken, 60).passed);
  }

  TEST_CASE("draws are deterministic and open") {
    const auto a = matrix_element_draws(50);
    const auto b = matrix_element_draws(50);
    REQUIRE(a.size() == 50);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].k == b[i].k);
      CHECK(a[i].kappa == b[i].kappa);
      CHECK(a[i].kappa > 0.0);
      CHECK(std::abs(a[i].l_in - a[i].l_out) % 2 == 0);
    }
    CHECK(matrix_element_draws(5, 1)[0].k != a[0].k);
  }

  TEST_CASE("check selection") {
    CHECK(check_names().size() == 7);
    CHECK_THROWS_AS(run_checks({"nope"}), std::invalid_argument);
    const auto r = run_checks({"parity-threshold", "bessel"});
    REQUIRE(r.size() == 2);
    CHECK(r[0].name == "bessel");
    CHECK(r[1].name == "parity-threshold");
  }
}
