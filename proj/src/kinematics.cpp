#include "rotor/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rotor::kinematics {

std::optional<double> outgoing_wavenumber(double k, int l_in, int l_out,
                                          const Molecule& molecule) {
  const double lin2 = static_cast<double>(l_in) * l_in;
  const double lout2 = static_cast<double>(l_out) * l_out;
  if (lin2 == lout2) {
    if (molecule.half_separation() == 0.0 && l_in != 0) {
      throw std::invalid_argument("rotor states need half_separation > 0");
    }
    return k;
  }
  if (molecule.half_separation() == 0.0) {
    throw std::invalid_argument("rotor states need half_separation > 0");
  }
  const double m = molecule.atom_mass();
  const double energy = k * k / (4.0 * m) + (lin2 - lout2) / (2.0 * molecule.moment_of_inertia());
  if (!(energy > 0.0)) return std::nullopt;
  return 2.0 * std::sqrt(m) * std::sqrt(energy);
}

std::vector<Channel> open_channels(const IncidentBeam& beam, const Molecule& molecule,
                                   bool parity_only) {
  std::vector<Channel> out;
  const double k = beam.wavenumber();
  const double ka = k * molecule.half_separation();
  for (const auto& [l_in, psi] : beam.amplitudes()) {
    const double weight = std::norm(psi);
    if (molecule.half_separation() == 0.0) {
      if (l_in != 0) throw std::invalid_argument("rotor states need half_separation > 0");
      out.push_back({0, 0, k, weight});
      continue;
    }
    // Open channels satisfy l_out^2 < l_in^2 + (k alpha)^2; probe one past.
    const double reach = std::sqrt(static_cast<double>(l_in) * l_in + ka * ka);
    const int bound = static_cast<int>(std::min(std::floor(reach) + 1.0, 1e9));
    for (int l_out = -bound; l_out <= bound; ++l_out) {
      if (parity_only && (l_in - l_out) % 2 != 0) continue;
      if (const auto kappa = outgoing_wavenumber(k, l_in, l_out, molecule)) {
        out.push_back({l_in, l_out, *kappa, weight});
      }
    }
  }
  return out;
}

ScatteringGeometry geometry(double k, double kappa, double theta) {
  ScatteringGeometry g;
  g.theta = theta;
  g.kappa = kappa;
  const double s = std::sin(theta);
  const double half = std::sin(0.5 * theta);
  g.q_x = -(kappa * s);
  // k - kappa cos(theta), rearranged to avoid cancellation near theta = 0.
  g.q_y = (k - kappa) + 2.0 * kappa * half * half;
  g.q_mag = std::hypot(g.q_x, g.q_y);
  g.mu = g.q_mag < 1e-12 ? 0.0 : std::atan2(-g.q_x, -g.q_y);
  return g;
}

}  // namespace rotor::kinematics
