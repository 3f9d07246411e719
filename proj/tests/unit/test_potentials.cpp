#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "rotor/potentials.hpp"

using namespace rotor;
using namespace rotor::potentials;

TEST_SUITE("potentials") {
  TEST_CASE("ft_peak examples") {
    CHECK(ft_peak(PeakShape::gaussian(1.0, 1.0), 0.0) == 0.5);
    CHECK(ft_peak(PeakShape::polynomial_gaussian(1.0, 1.0), 0.0) == 0.0);
    CHECK(ft_peak(PeakShape::polynomial_gaussian(1.0, 1.0), 2.0) ==
          doctest::Approx(std::exp(-1.0) / 2).epsilon(1e-15));
    // q^2 exp(-q^2/4) peaks at q = 2 / width.
    const auto p = PeakShape::polynomial_gaussian(1.0, 1.0);
    CHECK(ft_peak(p, 2.0) > ft_peak(p, 1.99));
    CHECK(ft_peak(p, 2.0) > ft_peak(p, 2.01));
    CHECK(ft_peak(PeakShape::gaussian(3.0, 2.0), 0.0) == 6.0);
  }

  TEST_CASE("ft_total examples") {
    const auto g = PeakShape::gaussian(1.0, 1.0);
    const PotentialSpec pair({{2.0, g}, {-2.0, g}});
    CHECK(ft_total(pair, 0.0, 0.0) == std::complex<double>(1.0, 0.0));
    const PotentialSpec single({{0.0, g}});
    CHECK(ft_total(single, 0.6, 0.8) == std::complex<double>(ft_peak(g, 1.0), 0.0));

    const auto grating = make_grating(1, 6.0, g);
    const double qx = std::numbers::pi / 6;
    const auto v = ft_total(grating, qx, 0.0);
    CHECK(v.real() == doctest::Approx(-ft_peak(g, qx)).epsilon(1e-14));
    CHECK(std::fabs(v.imag()) <= 1e-16);
  }

  TEST_CASE("two identical Gaussians") {
    const auto g = PeakShape::gaussian(1.3, 0.7);
    const double d = 2.5;
    const PotentialSpec pair({{-d, g}, {d, g}});
    for (const double qx : {-3.0, -0.4, 0.0, 0.9, 5.5}) {
      for (const double qy : {-1.0, 0.0, 2.0}) {
        const double q = std::hypot(qx, qy);
        const double expected = 1.3 * 0.49 * std::cos(qx * d) * std::exp(-q * q * 0.49 / 4);
        CHECK(ft_total(pair, qx, qy).real() == doctest::Approx(expected).epsilon(1e-13).scale(1e-3));
      }
    }
  }

  TEST_CASE("mirror symmetry is exact conjugation") {
    const PotentialSpec spec({{-4.0, PeakShape::gaussian(1.0, 1.5)},
                              {4.0, PeakShape::polynomial_gaussian(1.0, 1.5)}});
    for (const double qx : {0.1, 0.77, 3.0, 12.5}) {
      for (const double qy : {-0.3, 0.0, 1.9}) {
        CHECK(ft_total(spec, -qx, qy) == std::conj(ft_total(spec, qx, qy)));
      }
    }
  }

  TEST_CASE("peak order does not change the bits") {
    std::vector<Peak> peaks;
    for (int j = -5; j <= 5; ++j) {
      peaks.push_back({0.37 * j, j % 2 ? PeakShape::gaussian(1.0 + 0.1 * j, 0.9)
                                       : PeakShape::polynomial_gaussian(0.5, 1.2)});
    }
    const PotentialSpec a(peaks);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      std::shuffle(peaks.begin(), peaks.end(), rng);
      const PotentialSpec b(peaks);
      for (const double qx : {0.3, 2.2, 7.0}) CHECK(ft_total(a, qx, 0.4) == ft_total(b, qx, 0.4));
    }
  }

  TEST_CASE("grating factorizes") {
    const auto g = PeakShape::gaussian(1.0, 1.0);
    for (const int n : {0, 1, 2, 10}) {
      const auto grating = make_grating(n, 6.0, g);
      for (int i = 1; i < 400; ++i) {
        const double qx = -2.0 + 4.0 * i / 400.0;
        const double qy = 0.3;
        const double lhs = std::abs(ft_total(grating, qx, qy));
        const double rhs = std::fabs(dirichlet_amplitude(qx * 6.0, n)) * ft_peak(g, std::hypot(qx, qy));
        // Relative agreement away from the zeros of the grating factor.
        if (rhs > 1e-3 * (2 * n + 1) * ft_peak(g, std::hypot(qx, qy))) {
          CHECK_MESSAGE(std::fabs(lhs - rhs) <= 1e-12 * rhs, "n = " << n << ", qx = " << qx);
        } else {
          CHECK(std::fabs(lhs - rhs) <= 1e-14 * (2 * n + 1));
        }
      }
    }
  }

  TEST_CASE("dirichlet amplitude") {
    CHECK(dirichlet_amplitude(0.0, 10) == 21.0);
    CHECK(dirichlet_amplitude(1e-12, 10) == doctest::Approx(21.0).epsilon(1e-15));
    CHECK(dirichlet_amplitude(std::numbers::pi, 1) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(dirichlet_amplitude(4 * std::numbers::pi, 3) == doctest::Approx(7.0).epsilon(1e-12));
    for (const double x : {-3.0, 0.0, 0.5, 2.0, 100.0}) CHECK(dirichlet_amplitude(x, 0) == doctest::Approx(1.0));
    for (const int n : {1, 2, 10}) {
      for (int i = -1000; i <= 1000; ++i) {
        const double x = 0.013 * i;
        const double v = dirichlet_amplitude(x, n);
        CHECK(v * v <= (2.0 * n + 1) * (2.0 * n + 1) * (1 + 1e-15));
      }
    }
    // Continuity across the series threshold.
    for (const double x : {0.9e-8, 2.1e-8, 1e-7}) {
      CHECK(dirichlet_amplitude(x, 10) == doctest::Approx(21.0).epsilon(1e-12));
    }
    // Exact product overload.
    CHECK(dirichlet_amplitude(0.1, 6.0, 2) == doctest::Approx(dirichlet_amplitude(0.6, 2)).epsilon(1e-14));
    CHECK_THROWS(dirichlet_amplitude(1.0, -1));
  }

  TEST_CASE("make_grating") {
    const auto g = PeakShape::gaussian(1.0, 1.0);
    CHECK(make_grating(0, 6.0, g).peaks().size() == 1);
    const auto five = make_grating(2, 6.0, g);
    std::vector<double> centers;
    for (const auto& p : five.peaks()) centers.push_back(p.center_x);
    CHECK(centers == std::vector<double>{-12, -6, 0, 6, 12});
    CHECK(make_grating(50, 1.0, g).peaks().size() == 101);
    CHECK_THROWS(make_grating(-1, 1.0, g));
    CHECK_THROWS(make_grating(1, 0.0, g));
  }
}
