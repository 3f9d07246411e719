#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rotor/config.hpp"

namespace rotor::app {

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 1,
  kNumericalFailure = 2,
};

struct ThetaOverride {
  std::optional<double> min;
  std::optional<double> max;
  std::optional<int> steps;
};

struct RunManifest {
  std::string subcommand;  // profile, sweep, compare, validate, bessel-table
  std::filesystem::path config_path;
  std::filesystem::path output_dir = ".";
  std::set<std::string> formats{"csv"};  // csv, json, svg
  unsigned threads = 1;
  std::vector<std::string> only;  // validate: check names
  ThetaOverride theta;
  int n_max = 0;   // bessel-table
  double x = 0.0;  // bessel-table
};

/// FNV-1a over the canonical configuration and every option that changes the
/// output; the thread count is excluded.
std::uint64_t manifest_hash(const RunManifest& manifest, const std::string& canonical_config);
std::string hex(std::uint64_t h);

/// Reads, validates and applies the theta overrides. Throws ConfigError.
RunConfig load_config(const RunManifest& manifest);

/// Each entry point writes its files under output_dir, prints the paths it
/// wrote to `out` and problems to `err`, and returns an ExitCode.
int run_profile(const RunManifest& manifest, std::ostream& out, std::ostream& err);
int run_sweep(const RunManifest& manifest, std::ostream& out, std::ostream& err);
int run_compare(const RunManifest& manifest, std::ostream& out, std::ostream& err);
int run_validate(const RunManifest& manifest, std::ostream& out, std::ostream& err);
/// CSV "n,J_n" for n = 0..n_max on `out`.
int bessel_table(const RunManifest& manifest, std::ostream& out, std::ostream& err);

int run(const RunManifest& manifest, std::ostream& out, std::ostream& err);

}  // namespace rotor::app
