#include "rotor/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "rotor/born.hpp"
#include "rotor/kinematics.hpp"
#include "rotor/oracle.hpp"
#include "rotor/potentials.hpp"
#include "rotor/profile.hpp"
#include "rotor/specfun.hpp"

namespace rotor::validation {
namespace {

constexpr double kPi = std::numbers::pi;

std::string describe(std::initializer_list<std::pair<const char*, double>> fields) {
  std::ostringstream out;
  out.precision(17);
  bool first = true;
  for (const auto& [key, value] : fields) {
    out << (first ? "" : " ") << key << '=' << value;
    first = false;
  }
  return out.str();
}

std::vector<double> theta_grid(double lo, double hi, std::size_t steps) {
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  return out;
}

// Per-sample deviations gathered in parallel, then tallied in order.
struct Deviation {
  double abs_dev = 0.0;
  double rel_dev = 0.0;
  bool abs_allowed = true;
  std::string where;
  std::string error;
};

Deviation deviation(double expected, double actual, std::string where) {
  const double abs_dev = std::fabs(actual - expected);
  const double rel_dev = expected == 0.0 ? (abs_dev == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                                         : abs_dev / std::fabs(expected);
  return {abs_dev, rel_dev, true, std::move(where), {}};
}

Deviation deviation(std::complex<double> expected, std::complex<double> actual,
                    std::string where) {
  const double abs_dev = std::abs(actual - expected);
  const double scale = std::abs(expected);
  const double rel_dev = scale == 0.0 ? (abs_dev == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                                      : abs_dev / scale;
  return {abs_dev, rel_dev, true, std::move(where), {}};
}

void tally_all(Tally& tally, const std::vector<Deviation>& devs) {
  for (const auto& d : devs) {
    if (!d.error.empty()) {
      tally.fail(d.where + ": " + d.error);
    } else {
      tally.add(d.abs_dev, d.rel_dev, d.where, d.abs_allowed);
    }
  }
}

// Runs body(i) -> Deviation in parallel, turning exceptions into failures.
template <typename Body>
std::vector<Deviation> gather(std::size_t count, unsigned threads, Body body) {
  std::vector<Deviation> out(count);
  parallel_for(count, threads, [&](std::size_t i) {
    try {
      out[i] = body(i);
    } catch (const std::exception& e) {
      out[i].where = "sample " + std::to_string(i);
      out[i].error = e.what();
    }
  });
  return out;
}

}  // namespace

Tally::Tally(std::string name, double rel_tol, double abs_tol) {
  result_.name = std::move(name);
  result_.rel_tol = rel_tol;
  result_.abs_tol = abs_tol;
}

void Tally::add(double abs_dev, double rel_dev, const std::string& where, bool abs_allowed) {
  ++result_.samples;
  result_.worst_absolute = std::max(result_.worst_absolute, abs_dev);
  if (std::isfinite(rel_dev)) result_.worst_relative = std::max(result_.worst_relative, rel_dev);
  const bool ok = (rel_dev <= result_.rel_tol) || (abs_allowed && abs_dev <= result_.abs_tol);
  if (!ok || std::isnan(abs_dev)) {
    ++result_.failures;
    if (result_.passed) {
      std::ostringstream out;
      out.precision(3);
      out << where << ": abs " << abs_dev << ", rel " << rel_dev;
      result_.detail = out.str();
    }
    result_.passed = false;
  }
}

void Tally::compare(double expected, double actual, const std::string& where) {
  const auto d = deviation(expected, actual, where);
  add(d.abs_dev, d.rel_dev, where);
}

void Tally::compare(std::complex<double> expected, std::complex<double> actual,
                    const std::string& where) {
  const auto d = deviation(expected, actual, where);
  add(d.abs_dev, d.rel_dev, where);
}

void Tally::require(bool ok, const std::string& where) {
  ++result_.samples;
  if (!ok) {
    ++result_.failures;
    if (result_.passed) result_.detail = where;
    result_.passed = false;
  }
}

void Tally::fail(const std::string& why) {
  ++result_.samples;
  ++result_.failures;
  if (result_.passed) result_.detail = why;
  result_.passed = false;
}

CheckResult check_bessel() {
  Tally tally("bessel", 1e-10, 1e-12);
  for (const double x : {1.0, 10.0, 100.0, 1000.0}) {
    const int n_max = static_cast<int>(x) + 60;
    const auto j = specfun::bessel_j_batch({n_max}, x);
    double tail = 0.0;
    for (int n = n_max; n >= 1; --n) tail += j[static_cast<std::size_t>(n)] * j[static_cast<std::size_t>(n)];
    tally.compare(1.0, j[0] * j[0] + 2.0 * tail, describe({{"sum_of_squares x", x}}));
  }
  for (const double x : {0.1, 1.0, 7.5, 10.0, 100.0, 1000.0}) {
    const int n_max = static_cast<int>(x) + 40;
    const auto j = specfun::bessel_j_batch({n_max}, x);
    for (int n = 1; n < n_max; ++n) {
      const auto i = static_cast<std::size_t>(n);
      const double residual = std::fabs(j[i - 1] + j[i + 1] - (2.0 * n / x) * j[i]);
      tally.add(residual, residual / std::max(1.0, std::fabs(j[i])),
                describe({{"recurrence n", static_cast<double>(n)}, {"x", x}}));
    }
    for (int n = 0; n <= n_max; ++n) {
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      tally.require(specfun::bessel_j(-n, x) == sign * specfun::bessel_j(n, x),
                    describe({{"reflection n", static_cast<double>(n)}, {"x", x}}));
    }
  }
  tally.compare(0.0, specfun::bessel_j(0, 2.404825557695773), "first zero of J_0");
  tally.require(specfun::bessel_j(0, 0.0) == 1.0, "J_0(0) = 1");
  return tally.result();
}

CheckResult check_ft(unsigned threads) {
  Tally tally("ft", 1e-8, 1e-10);
  struct Point {
    PeakShape shape;
    double q_x;
    double q_y;
  };
  std::vector<Point> points;
  int index = 0;
  for (const auto variant : {PeakVariant::gaussian, PeakVariant::polynomial_gaussian}) {
    for (const double width : {1.0, 2.0}) {
      for (int step = 0; step <= 24; ++step) {
        const double q = 0.5 * step / width;
        const double direction = 0.7 * index++;
        points.push_back({PeakShape(variant, 1.0, width), q * std::cos(direction),
                          q * std::sin(direction)});
      }
    }
  }
  oracle::QuadratureSpec quad;
  quad.precision = oracle::Precision::extended;
  auto devs = gather(points.size(), threads, [&](std::size_t i) {
    const auto& p = points[i];
    const double q = std::hypot(p.q_x, p.q_y);
    const double expected = potentials::ft_peak(p.shape, q);
    const auto numeric = oracle::ft_numeric(p.shape, p.q_x, p.q_y, quad);
    auto d = deviation(std::complex<double>(expected, 0.0), numeric,
                       std::string(to_string(p.shape.variant())) +
                           describe({{" width", p.shape.width()}, {"q_x", p.q_x}, {"q_y", p.q_y}}));
    // Absolute tolerance only where the transform vanishes identically.
    d.abs_allowed = expected == 0.0;
    return d;
  });
  tally_all(tally, devs);
  return tally.result();
}

std::vector<MatrixElementDraw> matrix_element_draws(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> k_dist(0.5, 5.0);
  std::uniform_real_distribution<double> theta_dist(0.05, 3.0);
  std::uniform_real_distribution<double> len_dist(0.5, 3.0);
  std::uniform_real_distribution<double> sep_dist(0.0, 4.0);
  std::uniform_int_distribution<int> transfer_dist(0, 2);
  std::uniform_int_distribution<int> l_dist(-3, 3);
  std::bernoulli_distribution coin(0.5);

  std::vector<MatrixElementDraw> out;
  out.reserve(count);
  while (out.size() < count) {
    MatrixElementDraw d{};
    d.k = k_dist(rng);
    d.theta = theta_dist(rng);
    d.alpha = len_dist(rng);
    d.width = len_dist(rng);
    d.separation = sep_dist(rng);
    d.left = coin(rng) ? PeakVariant::gaussian : PeakVariant::polynomial_gaussian;
    d.right = coin(rng) ? PeakVariant::gaussian : PeakVariant::polynomial_gaussian;
    d.l_in = l_dist(rng);
    const int transfer = 2 * transfer_dist(rng);
    d.l_out = coin(rng) ? d.l_in + transfer : d.l_in - transfer;
    const auto kappa =
        kinematics::outgoing_wavenumber(d.k, d.l_in, d.l_out, Molecule(1.0, d.alpha));
    if (!kappa) continue;
    d.kappa = *kappa;
    out.push_back(d);
  }
  return out;
}

CheckResult check_matrix_element(const MatrixElementFn& fn, std::size_t draws,
                                 unsigned threads) {
  Tally tally("matrix-element", 1e-10, 1e-13);
  const auto sample = matrix_element_draws(draws);
  oracle::QuadratureSpec quad;
  quad.precision = oracle::Precision::standard;
  auto devs = gather(sample.size(), threads, [&](std::size_t i) {
    const auto& d = sample[i];
    const PotentialSpec spec({{-d.separation, PeakShape(d.left, 1.0, d.width)},
                              {d.separation, PeakShape(d.right, 1.0, d.width)}});
    const Molecule molecule(1.0, d.alpha);
    const auto closed = fn(spec, molecule, d.k, d.theta, d.l_in, d.l_out, d.kappa);
    const auto numeric = oracle::matrix_element_quadrature(spec, molecule, d.k, d.theta, d.l_in,
                                                           d.l_out, d.kappa, quad);
    return deviation(numeric, closed,
                     describe({{"draw", static_cast<double>(i)}, {"k", d.k}, {"theta", d.theta},
                               {"alpha", d.alpha}, {"width", d.width},
                               {"l_in", static_cast<double>(d.l_in)},
                               {"l_out", static_cast<double>(d.l_out)}}));
  });
  tally_all(tally, devs);
  return tally.result();
}

CheckResult check_matrix_element(std::size_t draws, unsigned threads) {
  return check_matrix_element(born::matrix_element, draws, threads);
}

namespace {

const std::vector<double> kSpecializationKs{0.5, 1.0, 2.0, 5.0, 10.0};

struct ClosedCase {
  EngineVariant variant;
  born::ClosedFormParams params;
};

std::vector<ClosedCase> closed_cases() {
  born::ClosedFormParams pair;
  pair.separation = 2.0;
  pair.half_separation = 1.0;

  born::ClosedFormParams grating;
  grating.separation = 6.0;
  grating.half_separation = 1.0;

  born::ClosedFormParams mixed;
  mixed.width = 1.5;
  mixed.separation = 4.0;
  mixed.half_separation = 2.5;

  std::vector<ClosedCase> out;
  for (const auto v :
       {EngineVariant::closed_two_gaussian, EngineVariant::closed_structureless_two_gaussian}) {
    out.push_back({v, pair});
  }
  for (const int n : {1, 2, 10}) {
    grating.grating_order = n;
    for (const auto v : {EngineVariant::closed_grating, EngineVariant::closed_structureless_grating}) {
      out.push_back({v, grating});
    }
  }
  for (const auto v : {EngineVariant::closed_mixed, EngineVariant::closed_structureless_mixed}) {
    out.push_back({v, mixed});
  }
  return out;
}

}  // namespace

CheckResult check_specialization(unsigned threads) {
  Tally tally("specialization", 1e-12, 0.0);
  const auto thetas = theta_grid(-kPi / 2, kPi / 2, 181);
  struct Job {
    ClosedCase c;
    double k;
  };
  std::vector<Job> jobs;
  for (const auto& c : closed_cases()) {
    for (const double k : kSpecializationKs) jobs.push_back({c, k});
  }
  std::vector<std::vector<Deviation>> per_job(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t j) {
    auto p = jobs[j].c.params;
    p.k = jobs[j].k;
    const auto variant = jobs[j].c.variant;
    const auto spec = born::closed_form_potential(variant, p);
    const Molecule molecule(p.mass, p.half_separation);
    const auto beam = IncidentBeam::ground_state(p.k);
    for (const double theta : thetas) {
      const std::string where =
          std::string(to_string(variant)) +
          describe({{" N", static_cast<double>(p.grating_order)}, {"k", p.k}, {"theta", theta}});
      try {
        const double closed = born::cross_section_closed(variant, theta, p);
        const double engine =
            has_internal_structure(variant)
                ? born::cross_section_general(theta, molecule, beam, spec).sigma
                : born::cross_section_structureless_reference(theta, molecule, p.k, spec);
        per_job[j].push_back(deviation(closed, engine, where));
      } catch (const std::exception& e) {
        per_job[j].push_back({0, 0, true, where, e.what()});
      }
    }
  });
  for (const auto& devs : per_job) tally_all(tally, devs);
  return tally.result();
}

CheckResult check_structureless_limit(unsigned threads) {
  Tally tally("structureless-limit", 1e-6, 0.0);
  const auto thetas = theta_grid(-kPi / 2, kPi / 2, 181);
  const auto gaussian = PeakShape::gaussian(1.0, 1.0);
  const std::vector<PotentialSpec> specs{
      PotentialSpec({{0.0, gaussian}}),
      PotentialSpec({{-2.0, gaussian}, {2.0, gaussian}}),
      potentials::make_grating(2, 6.0, gaussian),
      PotentialSpec({{-4.0, PeakShape::gaussian(1.0, 1.5)},
                     {4.0, PeakShape::polynomial_gaussian(1.0, 1.5)}}),
  };
  const Molecule molecule(1.0, 1e-8);
  struct Job {
    std::size_t spec;
    double k;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    for (const double k : kSpecializationKs) jobs.push_back({s, k});
  }
  std::vector<std::vector<Deviation>> per_job(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t j) {
    const auto& spec = specs[jobs[j].spec];
    const double k = jobs[j].k;
    const auto beam = IncidentBeam::ground_state(k);
    for (const double theta : thetas) {
      const double general = born::cross_section_general(theta, molecule, beam, spec).sigma;
      const double reference = born::cross_section_structureless_reference(theta, molecule, k, spec);
      per_job[j].push_back(deviation(
          reference, general,
          describe({{"potential", static_cast<double>(jobs[j].spec)}, {"k", k}, {"theta", theta}})));
    }
  });
  for (const auto& devs : per_job) tally_all(tally, devs);
  return tally.result();
}

CheckResult check_decoupling(unsigned threads) {
  // The "relative" deviation is the off-diagonal (l_out != l_in) share of sigma.
  Tally tally("decoupling", 1e-6, 0.0);
  const auto thetas = theta_grid(-kPi / 2, kPi / 2, 181);
  const double alpha = 0.01;
  const double width = 1.0;  // width / alpha = 100
  const auto gaussian = PeakShape::gaussian(1.0, width);
  const std::vector<PotentialSpec> specs{
      PotentialSpec({{0.0, gaussian}}),
      PotentialSpec({{-2.0, gaussian}, {2.0, gaussian}}),
  };
  // Ground-state beams are tested at every angle. For l != 0 the l -> -l
  // channel keeps kappa = k and is only suppressed where the form factor is
  // not, so those beams are tested where |q| width <= 1.
  const std::vector<IncidentBeam::Amplitudes> states{
      {{0, 1.0}},
      {{4, 1.0}},
      {{0, 0.6}, {2, 0.8}},
      {{-3, std::complex<double>(0.0, 0.6)}, {1, 0.8}},
  };
  struct Job {
    std::size_t spec;
    std::size_t state;
    double k;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    for (std::size_t b = 0; b < states.size(); ++b) {
      for (const double k : {0.5, 2.0, 10.0, 20.0}) jobs.push_back({s, b, k});  // k width <= 20
    }
  }
  const Molecule molecule(1.0, alpha);
  std::vector<std::vector<Deviation>> per_job(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t j) {
    const auto& amplitudes = states[jobs[j].state];
    const bool ground = amplitudes.size() == 1 && amplitudes.contains(0);
    const double k = jobs[j].k;
    const IncidentBeam beam(k, amplitudes);
    for (const double theta : thetas) {
      if (!ground && 2.0 * k * std::sin(0.5 * std::fabs(theta)) * width > 1.0) continue;
      const auto xs = born::cross_section_general(theta, molecule, beam, specs[jobs[j].spec]);
      double off = 0.0;
      for (const auto& c : xs.channels) {
        if (c.channel.l_out != c.channel.l_in) off += c.sigma;
      }
      Deviation d;
      d.where = describe({{"potential", static_cast<double>(jobs[j].spec)},
                          {"state", static_cast<double>(jobs[j].state)},
                          {"k", k},
                          {"theta", theta}});
      d.abs_dev = off;
      d.rel_dev = xs.sigma > 0.0 ? off / xs.sigma : (off == 0.0 ? 0.0 : 1.0);
      per_job[j].push_back(d);
    }
  });
  for (const auto& devs : per_job) tally_all(tally, devs);
  return tally.result();
}

CheckResult check_parity_threshold() {
  Tally tally("parity-threshold", 0.0, 0.0);
  const auto spec = PotentialSpec(
      {{-2.0, PeakShape::gaussian(1.0, 1.0)}, {2.0, PeakShape::polynomial_gaussian(1.0, 1.0)}});
  const std::vector<IncidentBeam::Amplitudes> states{
      {{0, 1.0}},
      {{3, 1.0}},
      {{0, 0.6}, {2, 0.8}},
      {{-1, std::complex<double>(0.0, 0.6)}, {4, 0.8}},
  };
  for (const double alpha : {0.7, 1.0, 2.5}) {
    const Molecule molecule(1.0, alpha);
    for (const double k : {0.5, 1.0, 2.5, 5.0}) {
      for (const auto& amplitudes : states) {
        const IncidentBeam beam(k, amplitudes);
        const double reach2 = (k * alpha) * (k * alpha);
        for (const double theta : {-1.2, -0.3, 0.0, 0.4, 1.5}) {
          const auto xs = born::cross_section_general(theta, molecule, beam, spec);
          std::size_t expected_channels = 0;
          for (const auto& [l, psi] : amplitudes) {
            for (int l_out = -200; l_out <= 200; ++l_out) {
              if (kinematics::outgoing_wavenumber(k, l, l_out, molecule)) ++expected_channels;
            }
          }
          const std::string where = describe({{"alpha", alpha}, {"k", k}, {"theta", theta}});
          tally.require(xs.channels.size() == expected_channels, "channel count at " + where);
          for (const auto& c : xs.channels) {
            const int l = c.channel.l_in;
            const int lp = c.channel.l_out;
            tally.require(static_cast<double>(lp) * lp <= static_cast<double>(l) * l + reach2,
                          "closed channel listed at " + where);
            if ((l - lp) % 2 != 0) {
              tally.require(c.sigma == 0.0, "odd transfer contributes at " + where);
            }
          }
        }
      }
    }
  }
  return tally.result();
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{
      "bessel",         "ft",         "matrix-element",  "specialization",
      "structureless-limit", "decoupling", "parity-threshold"};
  return names;
}

std::vector<CheckResult> run_checks(const std::vector<std::string>& only, unsigned threads) {
  for (const auto& name : only) {
    if (std::find(check_names().begin(), check_names().end(), name) == check_names().end()) {
      throw std::invalid_argument("unknown check: " + name);
    }
  }
  const auto wanted = [&](const std::string& name) {
    return only.empty() || std::find(only.begin(), only.end(), name) != only.end();
  };
  std::vector<CheckResult> out;
  const auto run = [&](const std::string& name, const auto& check) {
    if (!wanted(name)) return;
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      CheckResult r;
      r.name = name;
      r.passed = false;
      r.detail = e.what();
      out.push_back(r);
    }
  };
  run("bessel", [] { return check_bessel(); });
  run("ft", [&] { return check_ft(threads); });
  run("matrix-element", [&] { return check_matrix_element(500, threads); });
  run("specialization", [&] { return check_specialization(threads); });
  run("structureless-limit", [&] { return check_structureless_limit(threads); });
  run("decoupling", [&] { return check_decoupling(threads); });
  run("parity-threshold", [] { return check_parity_threshold(); });
  return out;
}

}  // namespace rotor::validation
