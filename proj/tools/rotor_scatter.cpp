#include <algorithm>
#include <iostream>
#include <sstream>
#include <string>
#include <set>

#include <CLI11.hpp>

#include "rotor/app.hpp"
#include "rotor/validation.hpp"

namespace {

std::set<std::string> split_formats(const std::string& text) {
  std::set<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item != "csv" && item != "json" && item != "svg") {
      throw CLI::ValidationError("--format", "unknown format '" + item + "'");
    }
    out.insert(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Born-approximation cross sections of a two-atom rotor on multi-peak potentials"};
  cli.require_subcommand(1);

  rotor::app::RunManifest manifest;
  std::string formats = "csv";
  std::string only;
  double theta_min = 0, theta_max = 0;
  int theta_steps = 0;

  const auto common = [&](CLI::App* sub, bool needs_config) {
    auto* config = sub->add_option("--config", manifest.config_path, "JSON run configuration");
    if (needs_config) config->required()->check(CLI::ExistingFile);
    sub->add_option("--out", manifest.output_dir, "output directory")->capture_default_str();
    sub->add_option("--format", formats, "comma-separated list of csv, json, svg")
        ->capture_default_str();
    sub->add_option("--threads", manifest.threads, "worker threads")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
  };
  const auto grid = [&](CLI::App* sub) {
    sub->add_option("--theta-min", theta_min, "override scan.theta.min");
    sub->add_option("--theta-max", theta_max, "override scan.theta.max");
    sub->add_option("--theta-steps", theta_steps, "override scan.theta.steps");
  };

  auto* profile = cli.add_subcommand("profile", "sigma(theta) for the configured engine");
  common(profile, true);
  grid(profile);
  auto* sweep = cli.add_subcommand("sweep", "sigma over theta x k");
  common(sweep, true);
  grid(sweep);
  auto* compare =
      cli.add_subcommand("compare", "fringe visibility with and without internal structure");
  common(compare, true);
  grid(compare);
  auto* validate = cli.add_subcommand("validate", "oracle and cross-engine checks");
  common(validate, false);
  validate->add_option("--only", only, "comma-separated check names")
      ->check([](const std::string& text) {
        std::stringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
          const auto& names = rotor::validation::check_names();
          if (std::find(names.begin(), names.end(), item) == names.end()) {
            return "unknown check '" + item + "'";
          }
        }
        return std::string();
      });
  auto* bessel = cli.add_subcommand("bessel-table", "J_n(x) for n = 0..n_max as CSV");
  bessel->add_option("--n-max", manifest.n_max, "highest order")->required();
  bessel->add_option("--x", manifest.x, "argument")->required();

  try {
    cli.parse(argc, argv);
    manifest.formats = split_formats(formats);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : rotor::app::kConfigError;
  }

  for (auto* sub : {profile, sweep, compare}) {
    if (!sub->parsed()) continue;
    if (sub->count("--theta-min")) manifest.theta.min = theta_min;
    if (sub->count("--theta-max")) manifest.theta.max = theta_max;
    if (sub->count("--theta-steps")) manifest.theta.steps = theta_steps;
  }
  if (!only.empty()) {
    std::stringstream in(only);
    std::string item;
    while (std::getline(in, item, ',')) manifest.only.push_back(item);
  }
  manifest.subcommand = cli.get_subcommands().front()->get_name();
  return rotor::app::run(manifest, std::cout, std::cerr);
}
