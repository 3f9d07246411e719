#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rotor/analysis.hpp"
#include "rotor/born.hpp"
#include "rotor/potentials.hpp"
#include "rotor/profile.hpp"

using namespace rotor;
using namespace rotor::analysis;

namespace {

constexpr double kPi = std::numbers::pi;

CrossSectionProfile sampled(double lo, double hi, int n, const auto& f) {
  CrossSectionProfile p{{}, {}, {}, {},
                        {Molecule(1.0, 0.0), IncidentBeam::ground_state(1.0),
                         PotentialSpec({{0.0, PeakShape::gaussian(1.0, 1.0)}}), EngineVariant::general}};
  for (int i = 0; i < n; ++i) {
    const double t = lo + (hi - lo) * i / (n - 1);
    p.thetas.push_back(t);
    p.sigma.push_back(f(t));
  }
  return p;
}

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("visibility of pure fringes") {
    const auto p = sampled(-1.0, 1.0, 1000001, [](double t) { return std::pow(std::cos(10 * t), 2); });
    CHECK(std::fabs(visibility(p, {-1.0, 1.0}) - 1.0) <= 1e-9);
    const auto flat = sampled(-1.0, 1.0, 101, [](double) { return 3.0; });
    CHECK(visibility(flat, {-1.0, 1.0}) == 0.0);
  }

  TEST_CASE("visibility of the paired-Gaussian profile") {
    born::ClosedFormParams p;
    p.separation = 6.0;
    p.k = 5.0;
    const auto prof = sampled(-kPi / 2, kPi / 2, 20001, [&](double t) {
      return born::cross_section_closed(EngineVariant::closed_structureless_two_gaussian, t, p);
    });
    CHECK(std::fabs(visibility(prof, {-kPi / 2, kPi / 2}) - 1.0) <= 1e-6);
  }

  TEST_CASE("visibility ignores overall scale") {
    const auto f = [](double t) { return 2.0 + std::sin(7 * t); };
    const auto a = sampled(-1.0, 1.0, 4001, f);
    const auto b = sampled(-1.0, 1.0, 4001, [&](double t) { return 1e-30 * f(t); });
    CHECK(visibility(a, {-1.0, 1.0}) == doctest::Approx(visibility(b, {-1.0, 1.0})).epsilon(1e-14));
    CHECK(visibility(a, {-1.0, 1.0}) == doctest::Approx(1.0 / 2.0).epsilon(1e-6));
  }

  TEST_CASE("plateaus and window edges") {
    auto p = sampled(0.0, 1.0, 64, [](double) { return 1.0; });
    p.sigma[10] = p.sigma[11] = p.sigma[12] = 2.0;
    p.sigma[30] = 0.5;
    p.sigma[0] = 5.0;
    p.sigma[63] = 0.0;
    const auto e = local_extrema(p, {0.0, 1.0});
    // the boundary samples 0 and 63 never count; 1..9 and 31..62 are plateaus
    REQUIRE(e.maxima.size() == 2);
    CHECK(e.maxima[0].index == 11);
    CHECK(e.maxima[1].index == 46);
    REQUIRE(e.minima.size() == 2);
    CHECK(e.minima[0].index == 5);
    CHECK(e.minima[1].index == 30);
    CHECK(visibility(p, {0.0, 1.0}) == doctest::Approx(0.6).epsilon(1e-15));
  }

  TEST_CASE("errors") {
    const auto small = sampled(0.0, 1.0, 31, [](double t) { return std::cos(20 * t); });
    CHECK_THROWS_AS(visibility(small, {0.0, 1.0}), AnalysisError);
    CHECK_THROWS_AS(visibility(small, {0.5, 0.5}), AnalysisError);
    const auto a = sampled(0.0, 1.0, 64, [](double t) { return 2 + std::cos(20 * t); });
    const auto b = sampled(0.0, 1.1, 64, [](double t) { return 2 + std::cos(20 * t); });
    CHECK_THROWS_AS(suppression_ratio(a, b, {0.0, 1.0}), AnalysisError);
    const auto flat = sampled(0.0, 1.0, 64, [](double) { return 1.0; });
    CHECK_THROWS_AS(suppression_ratio(a, flat, {0.0, 1.0}), AnalysisError);
    CHECK(suppression_ratio(a, a, {0.0, 1.0}) == 1.0);
  }

  TEST_CASE("peak spacing of a two-source pattern") {
    // cos^2(k d sin(theta)) with k d = 4: maxima at 0 and +-asin(pi/4)
    const auto prof = sampled(-kPi / 2, kPi / 2, 200001, [](double t) {
      return std::pow(std::cos(4.0 * std::sin(t)), 2);
    });
    CHECK(std::fabs(peak_spacing(prof, 0.1, 1) - std::asin(kPi / 4)) <= 1e-4);
    CHECK(std::fabs(peak_spacing(prof, 0.0, 2) - std::asin(kPi / 4)) <= 1e-4);
  }

  TEST_CASE("peak spacing needs resolved maxima") {
    born::ClosedFormParams p;
    p.separation = 6.0;
    p.grating_order = 0;
    p.k = 1.0;
    const auto single = sampled(-1.0, 1.0, 1001, [&](double t) {
      return born::cross_section_closed(EngineVariant::closed_structureless_grating, t, p);
    });
    CHECK_THROWS_AS(peak_spacing(single, 0.0, 1), AnalysisError);
    const auto coarse = sampled(-1.0, 1.0, 5, [](double t) { return std::cos(200 * t); });
    CHECK_THROWS_AS(peak_spacing(coarse, 0.0, 3), AnalysisError);
  }

  TEST_CASE("suppression tends to 1 as the rotor shrinks") {
    const auto g = PeakShape::gaussian(1.0, 1.0);
    const PotentialSpec spec({{-2.0, g}, {2.0, g}});
    const auto thetas = grid(-kPi / 2, kPi / 2, 2001);
    const Molecule tiny(1.0, 1e-6);
    const auto beam = IncidentBeam::ground_state(1.0);
    const auto with = compute_profile(EngineVariant::general, thetas, tiny, beam, spec);
    const auto without = compute_profile(EngineVariant::structureless, thetas, tiny, beam, spec);
    CHECK(std::fabs(suppression_ratio(with, without, {-kPi / 2, kPi / 2}) - 1.0) <= 1e-6);
  }

  TEST_CASE("l to -l leakage is not suppressed at wide angles") {
    // Small rotor in l = 1: the l' = -1 channel keeps kappa = k, and its
    // share of the cross section is J_2(alpha q)^2 / J_0(alpha q)^2, which
    // grows with q. Forward it is far below 1e-6; at backscatter it is not.
    const auto g = PeakShape::gaussian(1.0, 1.0);
    const PotentialSpec spec({{-2.0, g}, {2.0, g}});
    const Molecule mol(1.0, 0.01);
    const IncidentBeam beam(5.0, {{1, 1.0}});
    const auto share = [&](double theta) {
      const auto xs = born::cross_section_general(theta, mol, beam, spec);
      double off = 0.0;
      for (const auto& c : xs.channels) {
        if (c.channel.l_out != 1) off += c.sigma;
      }
      return off / xs.sigma;
    };
    CHECK(share(0.01) < 1e-12);
    CHECK(share(3.0) > 1e-6);
  }

  TEST_CASE("fringe report") {
    const auto p = sampled(-1.0, 1.0, 4001, [](double t) { return 1.5 + std::cos(10 * kPi * t); });
    const auto r = fringe_report(p, {-1.0, 1.0});
    CHECK(r.peak_thetas.size() == 9);
    CHECK(r.mean_spacing == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(r.visibility == doctest::Approx(1.0 / 1.5).epsilon(1e-6));
  }
}
