#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rotor {

/// Rigid two-atom rotor in the plane. Units: hbar = 1.
class Molecule {
 public:
  /// Throws std::invalid_argument unless atom_mass > 0 and half_separation >= 0.
  Molecule(double atom_mass, double half_separation);

  double atom_mass() const { return atom_mass_; }
  double half_separation() const { return half_separation_; }
  /// I = 2 m alpha^2.
  double moment_of_inertia() const {
    return 2.0 * atom_mass_ * half_separation_ * half_separation_;
  }

  bool operator==(const Molecule&) const = default;

 private:
  double atom_mass_;
  double half_separation_;
};

/// Incident plane wave along +y with a superposition of rotor states l.
class IncidentBeam {
 public:
  using Amplitudes = std::map<int, std::complex<double>>;

  /// Zero amplitudes are dropped. Throws std::invalid_argument unless
  /// wavenumber > 0 and sum |psi_l|^2 = 1 within kNormTolerance.
  IncidentBeam(double wavenumber, Amplitudes amplitudes);

  /// Rotor initially at rest: psi = {0: 1}.
  static IncidentBeam ground_state(double wavenumber);

  static constexpr double kNormTolerance = 1e-12;

  double wavenumber() const { return wavenumber_; }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  /// |psi_l|^2, zero for absent l.
  double weight(int l) const;
  IncidentBeam with_wavenumber(double k) const { return {k, amplitudes_}; }

  bool operator==(const IncidentBeam&) const = default;

 private:
  double wavenumber_;
  Amplitudes amplitudes_;
};

enum class PeakVariant { gaussian, polynomial_gaussian };

std::string_view to_string(PeakVariant v);
std::optional<PeakVariant> peak_variant_from_string(std::string_view s);

/// Radial peak profile:
///   gaussian             V0 exp(-r^2 / D^2)
///   polynomial_gaussian  V0 (1 - r^2 / D^2) exp(-r^2 / D^2)
class PeakShape {
 public:
  /// Throws std::invalid_argument unless width > 0 and strength is finite.
  PeakShape(PeakVariant variant, double strength, double width);

  static PeakShape gaussian(double strength, double width) {
    return {PeakVariant::gaussian, strength, width};
  }
  static PeakShape polynomial_gaussian(double strength, double width) {
    return {PeakVariant::polynomial_gaussian, strength, width};
  }

  PeakVariant variant() const { return variant_; }
  double strength() const { return strength_; }
  double width() const { return width_; }
  PeakShape scaled(double factor) const { return {variant_, strength_ * factor, width_}; }

  bool operator==(const PeakShape&) const = default;
  auto operator<=>(const PeakShape&) const = default;

 private:
  PeakVariant variant_;
  double strength_;
  double width_;
};

struct Peak {
  double center_x;
  PeakShape shape;

  bool operator==(const Peak&) const = default;
  auto operator<=>(const Peak&) const = default;
};

/// Superposition of radial peaks centred on the x axis.
class PotentialSpec {
 public:
  /// Throws std::invalid_argument for an empty list or non-finite centres.
  explicit PotentialSpec(std::vector<Peak> peaks);

  /// Peaks in construction order.
  const std::vector<Peak>& peaks() const { return peaks_; }
  /// Peaks sorted by (centre, shape); summation order used by form factors.
  const std::vector<Peak>& canonical_peaks() const { return canonical_; }

  /// Same centres, every strength multiplied by factor.
  PotentialSpec scaled(double factor) const;

  bool operator==(const PotentialSpec& other) const { return peaks_ == other.peaks_; }

 private:
  std::vector<Peak> peaks_;
  std::vector<Peak> canonical_;
};

/// Kinematics of one outgoing direction: q = k y_hat - kappa u_hat with
/// u_hat = (sin theta, cos theta).
struct ScatteringGeometry {
  double theta = 0.0;
  double kappa = 0.0;
  double q_x = 0.0;
  double q_y = 0.0;
  double q_mag = 0.0;
  double mu = 0.0;
};

enum class EngineVariant {
  general,
  structureless,
  closed_two_gaussian,
  closed_grating,
  closed_mixed,
  closed_structureless_two_gaussian,
  closed_structureless_grating,
  closed_structureless_mixed,
};

std::string_view to_string(EngineVariant v);
std::optional<EngineVariant> engine_variant_from_string(std::string_view s);
/// True for variants that model the rotor's internal states.
bool has_internal_structure(EngineVariant v);
/// The no-internal-structure counterpart used for comparisons.
EngineVariant structureless_partner(EngineVariant v);

struct ChannelKey {
  int l_in;
  int l_out;
  auto operator<=>(const ChannelKey&) const = default;
};

struct ProfileMetadata {
  Molecule molecule;
  IncidentBeam beam;
  PotentialSpec potential;
  EngineVariant variant;
};

/// sigma(theta) on an ascending grid, optionally split by channel.
struct CrossSectionProfile {
  std::vector<double> thetas;
  std::vector<double> sigma;
  /// Column keys and per-theta values, empty unless the engine resolves channels.
  std::vector<ChannelKey> channels;
  std::vector<std::vector<double>> per_channel;  // [channel][theta index]
  ProfileMetadata metadata;
};

}  // namespace rotor
