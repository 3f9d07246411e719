#include "rotor/born.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rotor/kinematics.hpp"
#include "rotor/potentials.hpp"
#include "rotor/specfun.hpp"

namespace rotor::born {
namespace {

constexpr double kPi = std::numbers::pi;

struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    carry += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

bool is_odd(long n) { return n % 2 != 0; }

// cos(a * b) with the rounding error of the product folded back in.
double cos_product(double a, double b) {
  const double p = a * b;
  return std::cos(p) - std::sin(p) * std::fma(a, b, -p);
}

}  // namespace

std::complex<double> matrix_element(const PotentialSpec& spec, const Molecule& molecule,
                                    double k, double theta, int l_in, int l_out,
                                    double kappa) {
  const int n = l_in - l_out;
  if (is_odd(n)) return {0.0, 0.0};
  const auto g = kinematics::geometry(k, kappa, theta);
  const double bessel = specfun::bessel_j(n, molecule.half_separation() * g.q_mag);
  const auto phase = std::polar(1.0, -static_cast<double>(n) * g.mu);
  // [1 + (-1)^n] = 2 for even n.
  return (1.0 / (2.0 * kPi)) * phase * (2.0 * bessel) *
         potentials::ft_total(spec, g.q_x, g.q_y);
}

CrossSection cross_section_general(double theta, const Molecule& molecule,
                                   const IncidentBeam& beam, const PotentialSpec& spec) {
  const double k = beam.wavenumber();
  const double m = molecule.atom_mass();
  const double prefactor = 8.0 * kPi * kPi * kPi * 4.0 * m * m / k;
  CrossSection out;
  CompensatedSum total;
  for (const auto& ch : kinematics::open_channels(beam, molecule, false)) {
    double sigma = 0.0;
    if (!is_odd(ch.l_in - ch.l_out)) {
      const auto me = matrix_element(spec, molecule, k, theta, ch.l_in, ch.l_out, ch.kappa);
      sigma = prefactor * ch.weight * std::norm(me);
    }
    out.channels.push_back({{ch.l_in, ch.l_out}, sigma});
    total.add(sigma);
  }
  out.sigma = total.value();
  return out;
}

double cross_section_structureless(double theta, double mass, double k,
                                   const PotentialSpec& spec) {
  const auto g = kinematics::geometry(k, k, theta);
  const auto ft = potentials::ft_total(spec, g.q_x, g.q_y);
  return 2.0 * kPi * mass * mass / k * std::norm(ft);
}

double cross_section_structureless_reference(double theta, const Molecule& molecule,
                                             double k, const PotentialSpec& spec) {
  return cross_section_structureless(theta, 2.0 * molecule.atom_mass(), k, spec.scaled(2.0));
}

namespace {

void require_ground_state(EngineVariant variant, const ClosedFormParams& p) {
  if (p.initial_l != 0) {
    throw UnsupportedVariant(std::string(to_string(variant)) +
                             " assumes the rotor starts in l = 0; use the general engine");
  }
}

// Sum over open even l' of term(l', kappa, geometry), for l = 0.
template <typename Term>
double even_channel_sum(const ClosedFormParams& p, double theta, Term term) {
  const Molecule molecule(p.mass, p.half_separation);
  const double reach = p.k * p.half_separation;
  const int bound = static_cast<int>(std::floor(reach)) + 1;
  CompensatedSum sum;
  for (int l_out = -bound; l_out <= bound; ++l_out) {
    if (is_odd(l_out)) continue;
    const auto kappa = kinematics::outgoing_wavenumber(p.k, 0, l_out, molecule);
    if (!kappa) continue;
    const auto g = kinematics::geometry(p.k, *kappa, theta);
    const double j = specfun::bessel_j(l_out, p.half_separation * g.q_mag);
    sum.add(4.0 * j * j * term(*kappa, g));
  }
  return sum.value();
}

}  // namespace

double cross_section_closed(EngineVariant variant, double theta, const ClosedFormParams& p) {
  const double m = p.mass;
  const double v0 = p.strength;
  const double w = p.width;
  const double w2 = w * w;
  const double d = p.separation;
  const double k = p.k;
  const double scale = m * m * w2 * w2 * v0 * v0 / k;  // m^2 Delta^4 V0^2 / k

  switch (variant) {
    case EngineVariant::closed_two_gaussian: {
      require_ground_state(variant, p);
      return 8.0 * kPi * scale * even_channel_sum(p, theta, [&](double kappa, const auto& g) {
               const double c = cos_product(kappa * std::sin(theta), d);
               return std::exp(-0.5 * w2 * g.q_mag * g.q_mag) * c * c;
             });
    }
    case EngineVariant::closed_grating: {
      require_ground_state(variant, p);
      return 2.0 * kPi * scale * even_channel_sum(p, theta, [&](double kappa, const auto& g) {
               const double dir =
                   potentials::dirichlet_amplitude(kappa * std::sin(theta), d, p.grating_order);
               return std::exp(-0.5 * w2 * g.q_mag * g.q_mag) * dir * dir;
             });
    }
    case EngineVariant::closed_mixed: {
      require_ground_state(variant, p);
      return 2.0 * kPi * scale * even_channel_sum(p, theta, [&](double kappa, const auto& g) {
               const double qw2 = g.q_mag * g.q_mag * w2;
               return std::exp(-0.5 * qw2) *
                      (1.0 + qw2 * qw2 / 16.0 +
                       0.5 * qw2 * cos_product(2.0 * (kappa * std::sin(theta)), d));
             });
    }
    case EngineVariant::closed_structureless_two_gaussian: {
      const double half = std::sin(0.5 * theta);
      const double c = cos_product(k * std::sin(theta), d);
      // 1 - cos(theta) = 2 sin^2(theta / 2)
      return 32.0 * kPi * scale * std::exp(-w2 * k * k * 2.0 * half * half) * c * c;
    }
    case EngineVariant::closed_structureless_grating: {
      const double half = std::sin(0.5 * theta);
      const double dir = potentials::dirichlet_amplitude(k * std::sin(theta), d, p.grating_order);
      return 8.0 * kPi * scale * std::exp(-w2 * k * k * 2.0 * half * half) * dir * dir;
    }
    case EngineVariant::closed_structureless_mixed: {
      const auto g = kinematics::geometry(k, k, theta);
      const double qw2 = g.q_mag * g.q_mag * w2;
      return 8.0 * kPi * scale * std::exp(-0.5 * qw2) *
             (1.0 + qw2 * qw2 / 16.0 + 0.5 * qw2 * cos_product(2.0 * (k * std::sin(theta)), d));
    }
    case EngineVariant::general:
    case EngineVariant::structureless:
      break;
  }
  throw UnsupportedVariant(std::string(to_string(variant)) + " has no closed form");
}

PotentialSpec closed_form_potential(EngineVariant variant, const ClosedFormParams& p) {
  const auto gaussian = PeakShape::gaussian(p.strength, p.width);
  switch (variant) {
    case EngineVariant::closed_two_gaussian:
    case EngineVariant::closed_structureless_two_gaussian:
      return PotentialSpec({{p.separation, gaussian}, {-p.separation, gaussian}});
    case EngineVariant::closed_grating:
    case EngineVariant::closed_structureless_grating:
      return potentials::make_grating(p.grating_order, p.separation, gaussian);
    case EngineVariant::closed_mixed:
    case EngineVariant::closed_structureless_mixed:
      return PotentialSpec({{p.separation, PeakShape::polynomial_gaussian(p.strength, p.width)},
                            {-p.separation, gaussian}});
    default:
      throw UnsupportedVariant(std::string(to_string(variant)) + " has no closed form");
  }
}

ClosedFormParams closed_form_params(EngineVariant variant, const Molecule& molecule,
                                    const IncidentBeam& beam, const PotentialSpec& spec) {
  const std::string name(to_string(variant));
  const auto& peaks = spec.canonical_peaks();  // sorted by centre
  const auto fail = [&](const std::string& why) -> ClosedFormParams {
    throw std::invalid_argument(name + ": " + why);
  };

  ClosedFormParams p;
  p.mass = molecule.atom_mass();
  p.half_separation = molecule.half_separation();
  p.k = beam.wavenumber();
  if (has_internal_structure(variant)) {
    if (beam.amplitudes().size() != 1 || !beam.amplitudes().contains(0)) {
      throw UnsupportedVariant(name + " assumes the rotor starts in l = 0; use the general engine");
    }
  }
  p.strength = peaks.front().shape.strength();
  p.width = peaks.front().shape.width();

  switch (variant) {
    case EngineVariant::closed_two_gaussian:
    case EngineVariant::closed_structureless_two_gaussian:
      if (peaks.size() != 2 || peaks[0].shape != peaks[1].shape ||
          peaks[0].shape.variant() != PeakVariant::gaussian ||
          peaks[0].center_x != -peaks[1].center_x || peaks[1].center_x <= 0.0) {
        return fail("needs two identical Gaussian peaks at +-d");
      }
      p.separation = peaks[1].center_x;
      return p;
    case EngineVariant::closed_mixed:
    case EngineVariant::closed_structureless_mixed:
      if (peaks.size() != 2 || peaks[0].center_x != -peaks[1].center_x ||
          peaks[1].center_x <= 0.0 || peaks[0].shape.variant() != PeakVariant::gaussian ||
          peaks[1].shape.variant() != PeakVariant::polynomial_gaussian ||
          peaks[0].shape.strength() != peaks[1].shape.strength() ||
          peaks[0].shape.width() != peaks[1].shape.width()) {
        return fail("needs a polynomial-Gaussian peak at +d and a matching Gaussian at -d");
      }
      p.separation = peaks[1].center_x;
      return p;
    case EngineVariant::closed_grating:
    case EngineVariant::closed_structureless_grating: {
      if (peaks.size() % 2 != 1) return fail("needs 2N+1 identical Gaussian peaks");
      const int n = static_cast<int>(peaks.size() / 2);
      p.grating_order = n;
      p.separation = n > 0 ? peaks[static_cast<std::size_t>(n) + 1].center_x : 1.0;
      for (std::size_t i = 0; i < peaks.size(); ++i) {
        const double expected = (static_cast<int>(i) - n) * p.separation;
        if (peaks[i].shape != peaks[0].shape ||
            peaks[i].shape.variant() != PeakVariant::gaussian || peaks[i].center_x != expected ||
            !(p.separation > 0.0)) {
          return fail("needs 2N+1 identical Gaussian peaks at j d, j = -N..N");
        }
      }
      return p;
    }
    default:
      throw UnsupportedVariant(name + " has no closed form");
  }
}

}  // namespace rotor::born
