#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "rotor/model.hpp"

namespace rotor::born {

/// <kappa u_hat, l_out | V | k y_hat, l_in> for the two-atom rotor:
///   (1/2pi) exp(-i n mu) [1 + (-1)^n] J_n(alpha |q|) V~_total(q),  n = l_in - l_out.
/// Exactly zero for odd n.
std::complex<double> matrix_element(const PotentialSpec& spec, const Molecule& molecule,
                                    double k, double theta, int l_in, int l_out,
                                    double kappa);

struct ChannelContribution {
  ChannelKey channel;
  double sigma;
};

struct CrossSection {
  double sigma = 0.0;
  /// Every energetically open channel in (l_in, l_out) order; odd transfers
  /// are listed with an exact zero.
  std::vector<ChannelContribution> channels;
};

/// First-order Born cross section of the rotor,
///   sigma = (2pi)^3 (4 m^2 / k) sum_{l, l' open} |psi_l|^2 |M_{l l'}|^2.
CrossSection cross_section_general(double theta, const Molecule& molecule,
                                   const IncidentBeam& beam, const PotentialSpec& spec);

/// Point particle of mass `mass`: sigma = (2pi M^2 / k) |V~_total(k y_hat - k u_hat)|^2.
/// Comparisons against the rotor use mass 2m and the doubled potential
/// (see structureless_reference).
double cross_section_structureless(double theta, double mass, double k,
                                   const PotentialSpec& spec);

/// The rotor's structureless counterpart: mass 2m in twice the potential.
double cross_section_structureless_reference(double theta, const Molecule& molecule,
                                             double k, const PotentialSpec& spec);

/// Parameters of the closed-form cross sections.
struct ClosedFormParams {
  double mass = 1.0;             // atom mass m
  double strength = 1.0;         // V0
  double width = 1.0;            // Delta
  double separation = 0.0;       // d: peaks at +-d, or grating spacing
  int grating_order = 0;         // N: 2N+1 grating peaks
  double half_separation = 0.0;  // alpha
  double k = 1.0;
  int initial_l = 0;  // the closed forms exist only for l = 0
};

class UnsupportedVariant : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Closed-form cross section for the paired / grating / mixed-peak
/// potentials. Internal-structure variants sum l' over open even channels
/// with kappa(k, 0; l') inside |q| and the interference phase.
///
/// Throws UnsupportedVariant for general/structureless, or for an
/// internal-structure variant with initial_l != 0.
double cross_section_closed(EngineVariant variant, double theta, const ClosedFormParams& p);

/// Potential on which the general / structureless engines reproduce the
/// closed form of `variant`.
PotentialSpec closed_form_potential(EngineVariant variant, const ClosedFormParams& p);

/// Reads ClosedFormParams back out of a potential, checking that its layout
/// matches the variant. Throws std::invalid_argument on mismatch.
ClosedFormParams closed_form_params(EngineVariant variant, const Molecule& molecule,
                                    const IncidentBeam& beam, const PotentialSpec& spec);

}  // namespace rotor::born
