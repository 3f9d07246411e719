#include "rotor/app.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rotor/analysis.hpp"
#include "rotor/born.hpp"
#include "rotor/oracle.hpp"
#include "rotor/output.hpp"
#include "rotor/profile.hpp"
#include "rotor/specfun.hpp"
#include "rotor/validation.hpp"

namespace rotor::app {
namespace {

// Numerical problems found after a successful evaluation.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string canonical(const RunConfig& config) { return output::dump_json(to_json(config), -1); }

void write_file(const std::filesystem::path& path, const std::string& text, std::ostream& out) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << text;
  if (!file) throw std::runtime_error("error writing " + path.string());
  out << path.string() << '\n';
}

void require_finite(const std::vector<double>& values, const std::string& what) {
  for (const double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw NumericalFailure(what + ": cross section is not a finite non-negative number");
    }
  }
}

bool wants(const RunManifest& m, const char* format) { return m.formats.contains(format); }

// Maps exceptions to exit codes.
template <typename Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    for (const auto& issue : e.issues()) err << "config error: " << issue << '\n';
    return kConfigError;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::domain_error& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::out_of_range& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const oracle::OracleFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const analysis::AnalysisError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

std::string stem(const RunManifest& m, const std::string& canonical_config) {
  return m.subcommand + "-" + hex(manifest_hash(m, canonical_config));
}

}  // namespace

std::uint64_t manifest_hash(const RunManifest& m, const std::string& canonical_config) {
  std::ostringstream key;
  key << m.subcommand << '\n' << canonical_config << '\n';
  for (const auto& f : m.formats) key << f << ',';
  key << '\n';
  for (const auto& o : m.only) key << o << ',';
  key << '\n' << m.n_max << ' ' << output::format_real(m.x) << '\n';
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : key.str()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig load_config(const RunManifest& m) {
  std::ifstream file(m.config_path);
  if (!file) throw ConfigError({"config: cannot open " + m.config_path.string()});
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(file);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError({"config: malformed JSON: " + std::string(e.what())});
  }
  if (doc.is_object() && (m.theta.min || m.theta.max || m.theta.steps)) {
    auto& theta = doc["scan"]["theta"];
    if (m.theta.min) theta["min"] = *m.theta.min;
    if (m.theta.max) theta["max"] = *m.theta.max;
    if (m.theta.steps) theta["steps"] = *m.theta.steps;
  }
  return validate_config(doc);
}

int run_profile(const RunManifest& m, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto config = load_config(m);
    const auto thetas = config.scan.theta.samples();
    std::vector<CrossSectionProfile> profiles;
    profiles.push_back(compute_profile(config.engine.variant, thetas, config.molecule,
                                       config.beam, config.potential, m.threads));
    const auto partner = structureless_partner(config.engine.variant);
    if (config.engine.compare && partner != config.engine.variant) {
      profiles.push_back(compute_profile(partner, thetas, config.molecule, config.beam,
                                         config.potential, m.threads));
    }
    for (const auto& p : profiles) require_finite(p.sigma, std::string(to_string(p.metadata.variant)));

    const auto base = m.output_dir / stem(m, canonical(config));
    for (const auto& p : profiles) {
      const std::string name = base.string() + "-" + std::string(to_string(p.metadata.variant));
      if (wants(m, "csv")) write_file(name + ".csv", output::profile_csv(p), out);
      if (wants(m, "json")) {
        auto doc = output::profile_json(p);
        doc["config"] = to_json(config);
        write_file(name + ".json", output::dump_json(doc), out);
      }
    }
    if (wants(m, "svg")) {
      std::vector<const CrossSectionProfile*> refs;
      for (const auto& p : profiles) refs.push_back(&p);
      write_file(base.string() + ".svg", output::profiles_svg(refs, "sigma(theta)"), out);
    }
    return int{kSuccess};
  });
}

int run_sweep(const RunManifest& m, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto config = load_config(m);
    if (config.scan.k.empty()) throw ConfigError({"scan.k: sweep needs at least one k"});
    const auto thetas = config.scan.theta.samples();
    std::vector<EngineVariant> variants{config.engine.variant};
    const auto partner = structureless_partner(config.engine.variant);
    if (config.engine.compare && partner != config.engine.variant) variants.push_back(partner);

    const auto base = m.output_dir / stem(m, canonical(config));
    for (const auto variant : variants) {
      const auto sweep = compute_sweep(variant, thetas, config.scan.k, config.molecule,
                                       config.beam, config.potential, m.threads);
      for (const auto& row : sweep.sigma) require_finite(row, std::string(to_string(variant)));
      const std::string name = base.string() + "-" + std::string(to_string(variant));
      if (wants(m, "csv")) write_file(name + ".csv", output::sweep_csv(sweep), out);
      if (wants(m, "json")) {
        auto doc = output::sweep_json(sweep);
        doc["config"] = to_json(config);
        write_file(name + ".json", output::dump_json(doc), out);
      }
      if (wants(m, "svg")) {
        write_file(name + ".svg", output::sweep_svg(sweep, std::string(to_string(variant))), out);
      }
    }
    return int{kSuccess};
  });
}

int run_compare(const RunManifest& m, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto config = load_config(m);
    const auto variant = config.engine.variant;
    const auto partner = structureless_partner(variant);
    if (partner == variant) {
      throw ConfigError({"engine.variant: " + std::string(to_string(variant)) +
                         " has no structureless counterpart to compare with"});
    }
    const auto thetas = config.scan.theta.samples();
    const auto with = compute_profile(variant, thetas, config.molecule, config.beam,
                                      config.potential, m.threads);
    const auto without = compute_profile(partner, thetas, config.molecule, config.beam,
                                         config.potential, m.threads);
    require_finite(with.sigma, std::string(to_string(variant)));
    require_finite(without.sigma, std::string(to_string(partner)));

    const analysis::Window window{config.scan.theta.min, config.scan.theta.max};
    const auto report_with = analysis::fringe_report(with, window);
    const auto report_without = analysis::fringe_report(without, window);

    nlohmann::json doc;
    doc["config"] = to_json(config);
    doc["with_internal"] = output::fringe_json(report_with);
    doc["with_internal"]["variant"] = std::string(to_string(variant));
    doc["without"] = output::fringe_json(report_without);
    doc["without"]["variant"] = std::string(to_string(partner));
    int code = kSuccess;
    if (report_without.visibility == 0.0) {
      doc["suppression_ratio"] = nullptr;
      doc["error"] = "reference profile has zero visibility; ratio undefined";
      err << "numerical failure: reference profile has zero visibility\n";
      code = kNumericalFailure;
    } else {
      const double ratio = report_with.visibility / report_without.visibility;
      doc["suppression_ratio"] = ratio;
      if (ratio > 1.0 + 1e-9) {
        err << "note: suppression_ratio " << output::format_real(ratio)
            << " exceeds 1; internal structure did not reduce visibility\n";
      }
    }

    const auto base = m.output_dir / stem(m, canonical(config));
    write_file(base.string() + ".json", output::dump_json(doc), out);
    for (const auto* p : {&with, &without}) {
      const std::string name = base.string() + "-" + std::string(to_string(p->metadata.variant));
      if (wants(m, "csv")) write_file(name + ".csv", output::profile_csv(*p), out);
    }
    if (wants(m, "svg")) {
      write_file(base.string() + ".svg", output::profiles_svg({&with, &without}, "sigma(theta)"),
                 out);
    }
    return code;
  });
}

int run_validate(const RunManifest& m, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto results = validation::run_checks(m.only, m.threads);
    bool all = true;
    nlohmann::json doc;
    doc["checks"] = nlohmann::json::array();
    for (const auto& r : results) {
      all = all && r.passed;
      doc["checks"].push_back(output::check_json(r));
      out << (r.passed ? "PASS " : "FAIL ") << r.name << " worst_rel=" << output::format_real(r.worst_relative)
          << " worst_abs=" << output::format_real(r.worst_absolute) << " samples=" << r.samples;
      if (!r.passed) out << " (" << r.detail << ")";
      out << '\n';
    }
    doc["passed"] = all;
    const auto path = m.output_dir / (stem(m, "") + ".json");
    write_file(path, output::dump_json(doc), out);
    if (!all) err << "validation failed\n";
    return all ? int{kSuccess} : int{kNumericalFailure};
  });
}

int bessel_table(const RunManifest& m, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (m.n_max < 0) throw ConfigError({"--n-max must be >= 0"});
    const auto values = specfun::bessel_j_batch({m.n_max}, m.x);
    std::string csv = "n,J_n\n";
    for (std::size_t n = 0; n < values.size(); ++n) {
      csv += std::to_string(n) + "," + output::format_real(values[n]) + "\n";
    }
    out << csv;
    return int{kSuccess};
  });
}

int run(const RunManifest& m, std::ostream& out, std::ostream& err) {
  if (m.subcommand == "profile") return run_profile(m, out, err);
  if (m.subcommand == "sweep") return run_sweep(m, out, err);
  if (m.subcommand == "compare") return run_compare(m, out, err);
  if (m.subcommand == "validate") return run_validate(m, out, err);
  if (m.subcommand == "bessel-table") return bessel_table(m, out, err);
  err << "unknown subcommand: " << m.subcommand << '\n';
  return kConfigError;
}

}  // namespace rotor::app
