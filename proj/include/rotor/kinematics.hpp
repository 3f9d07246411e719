#pragma once

#include <optional>
#include <vector>

#include "rotor/model.hpp"

namespace rotor::kinematics {

/// An open (l_in -> l_out) scattering channel.
struct Channel {
  int l_in;
  int l_out;
  double kappa;   // outgoing wavenumber
  double weight;  // |psi_{l_in}|^2
};

/// Outgoing wavenumber from energy conservation,
///   kappa = 2 sqrt(m) (k^2/4m + l_in^2/2I - l_out^2/2I)^(1/2),
/// or nullopt when the channel is closed. Marginal channels with a zero
/// radicand are reported closed. Returns exactly k when l_out^2 == l_in^2.
///
/// Throws std::invalid_argument if the molecule has zero size and the
/// channel is not 0 -> 0.
std::optional<double> outgoing_wavenumber(double k, int l_in, int l_out,
                                          const Molecule& molecule);

/// All open channels fed by the beam, sorted by (l_in, l_out). With
/// parity_only, channels with odd l_in - l_out are dropped.
std::vector<Channel> open_channels(const IncidentBeam& beam, const Molecule& molecule,
                                   bool parity_only);

/// Momentum transfer q = k y_hat - kappa u_hat and the angle mu with
/// sin mu = kappa sin(theta) / |q|, cos mu = (kappa cos(theta) - k) / |q|.
/// mu is set to 0 when |q| < 1e-12.
ScatteringGeometry geometry(double k, double kappa, double theta);

}  // namespace rotor::kinematics
