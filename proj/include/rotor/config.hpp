#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotor/model.hpp"

namespace rotor {

struct ThetaGrid {
  double min = 0.0;
  double max = 0.0;
  int steps = 0;  // number of samples, endpoints included

  /// Evenly spaced, strictly ascending samples.
  std::vector<double> samples() const;
};

struct ScanSpec {
  ThetaGrid theta;
  std::vector<double> k;  // sweep wavenumbers, may be empty
};

struct EngineSettings {
  EngineVariant variant = EngineVariant::general;
  /// Also evaluate the structureless partner (compare and sweep).
  bool compare = false;
};

/// A validated run configuration.
struct RunConfig {
  Molecule molecule;
  IncidentBeam beam;
  PotentialSpec potential;
  EngineSettings engine;
  ScanSpec scan;
};

/// Every violated constraint, each prefixed with its JSON field path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// Checks a parsed configuration document and builds the domain types.
///
/// Schema:
///   molecule  {mass, alpha}
///   beam      {k, amplitudes: [{l, re, im}]}          (amplitudes optional)
///   potential {kind: "peaks", peaks: [{center, shape: {variant, v0, delta}}]}
///          or {kind: "grating", grating: {n, d, shape}}
///   engine    {variant, compare}                       (optional)
///   scan      {theta: {min, max, steps}, k: [...]}
///
/// Amplitudes whose norm is off by more than 1e-12 but at most 1e-6 are
/// renormalized; larger deviations are rejected. Throws ConfigError.
RunConfig validate_config(const nlohmann::json& doc);

/// Inverse of validate_config; re-validating the result is lossless.
nlohmann::json to_json(const RunConfig& config);

}  // namespace rotor
