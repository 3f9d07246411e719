#include "rotor/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rotor {

Molecule::Molecule(double atom_mass, double half_separation)
    : atom_mass_(atom_mass), half_separation_(half_separation) {
  if (!std::isfinite(atom_mass) || atom_mass <= 0.0) {
    throw std::invalid_argument("atom_mass must be > 0");
  }
  if (!std::isfinite(half_separation) || half_separation < 0.0) {
    throw std::invalid_argument("half_separation must be >= 0");
  }
}

IncidentBeam::IncidentBeam(double wavenumber, Amplitudes amplitudes)
    : wavenumber_(wavenumber) {
  if (!std::isfinite(wavenumber) || wavenumber <= 0.0) {
    throw std::invalid_argument("wavenumber must be > 0");
  }
  double norm = 0.0;
  for (const auto& [l, psi] : amplitudes) {
    if (!std::isfinite(psi.real()) || !std::isfinite(psi.imag())) {
      throw std::invalid_argument("amplitude for l=" + std::to_string(l) +
                                  " is not finite");
    }
    if (psi != std::complex<double>{}) {
      amplitudes_.emplace(l, psi);
      norm += std::norm(psi);
    }
  }
  if (std::fabs(norm - 1.0) > kNormTolerance) {
    throw std::invalid_argument("amplitudes must have unit norm, got sum |psi|^2 = " +
                                std::to_string(norm));
  }
}

IncidentBeam IncidentBeam::ground_state(double wavenumber) {
  return {wavenumber, {{0, 1.0}}};
}

double IncidentBeam::weight(int l) const {
  const auto it = amplitudes_.find(l);
  return it == amplitudes_.end() ? 0.0 : std::norm(it->second);
}

std::string_view to_string(PeakVariant v) {
  switch (v) {
    case PeakVariant::gaussian:
      return "gaussian";
    case PeakVariant::polynomial_gaussian:
      return "polynomial_gaussian";
  }
  return "unknown";
}

std::optional<PeakVariant> peak_variant_from_string(std::string_view s) {
  if (s == "gaussian") return PeakVariant::gaussian;
  if (s == "polynomial_gaussian") return PeakVariant::polynomial_gaussian;
  return std::nullopt;
}

PeakShape::PeakShape(PeakVariant variant, double strength, double width)
    : variant_(variant), strength_(strength), width_(width) {
  if (!std::isfinite(strength)) throw std::invalid_argument("strength must be finite");
  if (!std::isfinite(width) || width <= 0.0) {
    throw std::invalid_argument("width must be > 0");
  }
}

PotentialSpec::PotentialSpec(std::vector<Peak> peaks) : peaks_(std::move(peaks)) {
  if (peaks_.empty()) throw std::invalid_argument("potential needs at least one peak");
  for (const auto& p : peaks_) {
    if (!std::isfinite(p.center_x)) throw std::invalid_argument("peak centre must be finite");
  }
  canonical_ = peaks_;
  std::sort(canonical_.begin(), canonical_.end());
}

PotentialSpec PotentialSpec::scaled(double factor) const {
  std::vector<Peak> out;
  out.reserve(peaks_.size());
  for (const auto& p : peaks_) out.push_back({p.center_x, p.shape.scaled(factor)});
  return PotentialSpec(std::move(out));
}

namespace {
struct VariantName {
  EngineVariant variant;
  std::string_view name;
};
constexpr VariantName kVariantNames[] = {
    {EngineVariant::general, "general"},
    {EngineVariant::structureless, "structureless"},
    {EngineVariant::closed_two_gaussian, "closed_two_gaussian"},
    {EngineVariant::closed_grating, "closed_grating"},
    {EngineVariant::closed_mixed, "closed_mixed"},
    {EngineVariant::closed_structureless_two_gaussian, "closed_structureless_two_gaussian"},
    {EngineVariant::closed_structureless_grating, "closed_structureless_grating"},
    {EngineVariant::closed_structureless_mixed, "closed_structureless_mixed"},
};
}  // namespace

std::string_view to_string(EngineVariant v) {
  for (const auto& entry : kVariantNames) {
    if (entry.variant == v) return entry.name;
  }
  return "unknown";
}

std::optional<EngineVariant> engine_variant_from_string(std::string_view s) {
  for (const auto& entry : kVariantNames) {
    if (entry.name == s) return entry.variant;
  }
  return std::nullopt;
}

bool has_internal_structure(EngineVariant v) {
  switch (v) {
    case EngineVariant::general:
    case EngineVariant::closed_two_gaussian:
    case EngineVariant::closed_grating:
    case EngineVariant::closed_mixed:
      return true;
    default:
      return false;
  }
}

EngineVariant structureless_partner(EngineVariant v) {
  switch (v) {
    case EngineVariant::general:
      return EngineVariant::structureless;
    case EngineVariant::closed_two_gaussian:
      return EngineVariant::closed_structureless_two_gaussian;
    case EngineVariant::closed_grating:
      return EngineVariant::closed_structureless_grating;
    case EngineVariant::closed_mixed:
      return EngineVariant::closed_structureless_mixed;
    default:
      return v;
  }
}

}  // namespace rotor
