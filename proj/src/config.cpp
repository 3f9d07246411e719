#include "rotor/config.hpp"

#include <cmath>
#include <numbers>
#include <set>

namespace rotor {

using nlohmann::json;

std::vector<double> ThetaGrid::samples() const {
  std::vector<double> out(static_cast<std::size_t>(steps));
  if (steps == 1) {
    out[0] = min;
    return out;
  }
  const double step = (max - min) / (steps - 1);
  for (int i = 0; i < steps; ++i) out[static_cast<std::size_t>(i)] = min + i * step;
  out.back() = max;
  return out;
}

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string msg = "invalid configuration:";
  for (const auto& s : issues) msg += "\n  " + s;
  return msg;
}

// Accumulates issues while walking the document.
class Checker {
 public:
  void fail(const std::string& path, const std::string& what) {
    issues_.push_back(path + ": " + what);
  }
  const std::vector<std::string>& issues() const { return issues_; }

  const json* object(const json& parent, const std::string& key, const std::string& path,
                     bool required) {
    const auto it = parent.find(key);
    if (it == parent.end()) {
      if (required) fail(path, "missing");
      return nullptr;
    }
    if (!it->is_object()) {
      fail(path, "must be an object");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> number(const json& parent, const std::string& key,
                               const std::string& path, std::optional<double> fallback = {}) {
    const auto it = parent.find(key);
    if (it == parent.end()) {
      if (!fallback) fail(path, "missing");
      return fallback;
    }
    if (!it->is_number()) {
      fail(path, "must be a number");
      return std::nullopt;
    }
    const double v = it->get<double>();
    if (!std::isfinite(v)) {
      fail(path, "must be finite");
      return std::nullopt;
    }
    return v;
  }

  std::optional<long long> integer(const json& parent, const std::string& key,
                                   const std::string& path,
                                   std::optional<long long> fallback = {}) {
    const auto it = parent.find(key);
    if (it == parent.end()) {
      if (!fallback) fail(path, "missing");
      return fallback;
    }
    if (!it->is_number_integer()) {
      fail(path, "must be an integer");
      return std::nullopt;
    }
    return it->get<long long>();
  }

  void only_keys(const json& obj, const std::set<std::string>& allowed,
                 const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.contains(key) && key != "description") {
        fail(path.empty() ? key : path + "." + key, "unknown key");
      }
    }
  }

 private:
  std::vector<std::string> issues_;
};

std::optional<PeakShape> parse_shape(Checker& c, const json& parent, const std::string& path) {
  const json* shape = c.object(parent, "shape", path, true);
  if (!shape) return std::nullopt;
  c.only_keys(*shape, {"variant", "v0", "delta"}, path);
  std::optional<PeakVariant> variant;
  const auto it = shape->find("variant");
  if (it == shape->end()) {
    variant = PeakVariant::gaussian;
  } else if (!it->is_string() ||
             !(variant = peak_variant_from_string(it->get<std::string>()))) {
    c.fail(path + ".variant", "must be \"gaussian\" or \"polynomial_gaussian\"");
  }
  const auto v0 = c.number(*shape, "v0", path + ".v0");
  const auto delta = c.number(*shape, "delta", path + ".delta");
  if (delta && *delta <= 0.0) c.fail(path + ".delta", "width must be > 0");
  if (!variant || !v0 || !delta || *delta <= 0.0) return std::nullopt;
  return PeakShape(*variant, *v0, *delta);
}

std::optional<PotentialSpec> parse_potential(Checker& c, const json& doc) {
  const json* pot = c.object(doc, "potential", "potential", false);
  if (!pot) {
    // Two unit Gaussians at +-2, the smallest two-peak setup in the figures.
    const auto g = PeakShape::gaussian(1.0, 1.0);
    return PotentialSpec({{-2.0, g}, {2.0, g}});
  }
  c.only_keys(*pot, {"kind", "peaks", "grating"}, "potential");
  const auto kind_it = pot->find("kind");
  const std::string kind =
      kind_it != pot->end() && kind_it->is_string() ? kind_it->get<std::string>() : "";
  if (kind == "peaks") {
    const auto it = pot->find("peaks");
    if (it == pot->end() || !it->is_array() || it->empty()) {
      c.fail("potential.peaks", "must be a non-empty array");
      return std::nullopt;
    }
    std::vector<Peak> peaks;
    bool ok = true;
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = "potential.peaks[" + std::to_string(i) + "]";
      const json& entry = (*it)[i];
      if (!entry.is_object()) {
        c.fail(path, "must be an object");
        ok = false;
        continue;
      }
      c.only_keys(entry, {"center", "shape"}, path);
      const auto center = c.number(entry, "center", path + ".center");
      const auto shape = parse_shape(c, entry, path + ".shape");
      if (center && shape) {
        peaks.push_back({*center, *shape});
      } else {
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return PotentialSpec(std::move(peaks));
  }
  if (kind == "grating") {
    const json* grating = c.object(*pot, "grating", "potential.grating", true);
    if (!grating) return std::nullopt;
    c.only_keys(*grating, {"n", "d", "shape"}, "potential.grating");
    const auto n = c.integer(*grating, "n", "potential.grating.n");
    const auto d = c.number(*grating, "d", "potential.grating.d");
    const auto shape = parse_shape(c, *grating, "potential.grating.shape");
    bool ok = n && d && shape;
    if (n && (*n < 0 || *n > 1000000)) {
      c.fail("potential.grating.n", "must be in [0, 1000000]");
      ok = false;
    }
    if (d && *d <= 0.0) {
      c.fail("potential.grating.d", "must be > 0");
      ok = false;
    }
    if (!ok) return std::nullopt;
    std::vector<Peak> peaks;
    for (long long j = -*n; j <= *n; ++j) peaks.push_back({static_cast<double>(j) * *d, *shape});
    return PotentialSpec(std::move(peaks));
  }
  c.fail("potential.kind", "must be \"peaks\" or \"grating\"");
  return std::nullopt;
}

std::optional<IncidentBeam::Amplitudes> parse_amplitudes(Checker& c, const json& beam) {
  IncidentBeam::Amplitudes amps;
  const auto it = beam.find("amplitudes");
  if (it == beam.end()) {
    amps[0] = 1.0;
    return amps;
  }
  if (!it->is_array() || it->empty()) {
    c.fail("beam.amplitudes", "must be a non-empty array");
    return std::nullopt;
  }
  bool ok = true;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const std::string path = "beam.amplitudes[" + std::to_string(i) + "]";
    const json& entry = (*it)[i];
    if (!entry.is_object()) {
      c.fail(path, "must be an object");
      ok = false;
      continue;
    }
    c.only_keys(entry, {"l", "re", "im"}, path);
    const auto l = c.integer(entry, "l", path + ".l");
    const auto re = c.number(entry, "re", path + ".re");
    const auto im = c.number(entry, "im", path + ".im", 0.0);
    if (!l || !re || !im) {
      ok = false;
      continue;
    }
    if (*l < -10000 || *l > 10000) {
      c.fail(path + ".l", "must be in [-10000, 10000]");
      ok = false;
      continue;
    }
    if (!amps.emplace(static_cast<int>(*l), std::complex<double>(*re, *im)).second) {
      c.fail(path + ".l", "duplicate angular momentum " + std::to_string(*l));
      ok = false;
    }
  }
  if (!ok) return std::nullopt;

  double norm = 0.0;
  for (const auto& [l, psi] : amps) norm += std::norm(psi);
  const double deviation = std::fabs(norm - 1.0);
  if (deviation > 1e-6) {
    c.fail("beam.amplitudes", "sum |psi_l|^2 = " + std::to_string(norm) +
                                  " is not within 1e-6 of 1");
    return std::nullopt;
  }
  if (deviation > IncidentBeam::kNormTolerance) {
    const double scale = 1.0 / std::sqrt(norm);
    for (auto& [l, psi] : amps) psi *= scale;
  }
  return amps;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

RunConfig validate_config(const json& doc) {
  Checker c;
  if (!doc.is_object()) throw ConfigError({"<root>: must be a JSON object"});
  c.only_keys(doc, {"molecule", "beam", "potential", "engine", "scan"}, "");

  std::optional<double> mass;
  std::optional<double> alpha;
  if (const json* mol = c.object(doc, "molecule", "molecule", true)) {
    c.only_keys(*mol, {"mass", "alpha"}, "molecule");
    mass = c.number(*mol, "mass", "molecule.mass");
    alpha = c.number(*mol, "alpha", "molecule.alpha");
    if (mass && *mass <= 0.0) c.fail("molecule.mass", "atom_mass must be > 0");
    if (alpha && *alpha < 0.0) c.fail("molecule.alpha", "half_separation must be ≥ 0");
  }

  std::optional<double> k;
  std::optional<IncidentBeam::Amplitudes> amps;
  if (const json* beam = c.object(doc, "beam", "beam", true)) {
    c.only_keys(*beam, {"k", "amplitudes"}, "beam");
    k = c.number(*beam, "k", "beam.k");
    if (k && *k <= 0.0) c.fail("beam.k", "wavenumber must be > 0");
    amps = parse_amplitudes(c, *beam);
  }
  if (alpha && *alpha == 0.0 && amps) {
    for (const auto& [l, psi] : *amps) {
      if (l != 0) {
        c.fail("beam.amplitudes", "rotor states l != 0 need molecule.alpha > 0");
        break;
      }
    }
  }

  const auto potential = parse_potential(c, doc);

  EngineSettings engine;
  if (const json* eng = c.object(doc, "engine", "engine", false)) {
    c.only_keys(*eng, {"variant", "compare"}, "engine");
    if (const auto it = eng->find("variant"); it != eng->end()) {
      std::optional<EngineVariant> v;
      if (it->is_string()) v = engine_variant_from_string(it->get<std::string>());
      if (v) {
        engine.variant = *v;
      } else {
        c.fail("engine.variant", "unknown engine variant");
      }
    }
    if (const auto it = eng->find("compare"); it != eng->end()) {
      if (it->is_boolean()) {
        engine.compare = it->get<bool>();
      } else {
        c.fail("engine.compare", "must be a boolean");
      }
    }
  }

  ScanSpec scan{{-std::numbers::pi / 2, std::numbers::pi / 2, 721}, {}};
  if (const json* sc = c.object(doc, "scan", "scan", false)) {
    c.only_keys(*sc, {"theta", "k"}, "scan");
    if (const json* th = c.object(*sc, "theta", "scan.theta", false)) {
      c.only_keys(*th, {"min", "max", "steps"}, "scan.theta");
      const auto lo = c.number(*th, "min", "scan.theta.min");
      const auto hi = c.number(*th, "max", "scan.theta.max");
      const auto steps = c.integer(*th, "steps", "scan.theta.steps");
      if (lo && hi && *lo >= *hi) c.fail("scan.theta", "min must be < max");
      if (steps && (*steps < 2 || *steps > 100000000)) {
        c.fail("scan.theta.steps", "must be in [2, 1e8]");
      }
      if (lo && hi && steps) scan.theta = {*lo, *hi, static_cast<int>(*steps)};
    }
    if (const auto it = sc->find("k"); it != sc->end()) {
      if (!it->is_array()) {
        c.fail("scan.k", "must be an array");
      } else {
        for (std::size_t i = 0; i < it->size(); ++i) {
          const json& v = (*it)[i];
          const std::string path = "scan.k[" + std::to_string(i) + "]";
          if (!v.is_number() || !std::isfinite(v.get<double>()) || v.get<double>() <= 0.0) {
            c.fail(path, "must be a finite number > 0");
          } else {
            scan.k.push_back(v.get<double>());
          }
        }
      }
    }
  }

  if (!c.issues().empty()) throw ConfigError(c.issues());
  return RunConfig{Molecule(*mass, *alpha), IncidentBeam(*k, std::move(*amps)), *potential,
                   engine, std::move(scan)};
}

json to_json(const RunConfig& config) {
  json amps = json::array();
  for (const auto& [l, psi] : config.beam.amplitudes()) {
    amps.push_back({{"l", l}, {"re", psi.real()}, {"im", psi.imag()}});
  }
  json peaks = json::array();
  for (const auto& p : config.potential.peaks()) {
    peaks.push_back({{"center", p.center_x},
                     {"shape",
                      {{"variant", std::string(to_string(p.shape.variant()))},
                       {"v0", p.shape.strength()},
                       {"delta", p.shape.width()}}}});
  }
  return {
      {"molecule",
       {{"mass", config.molecule.atom_mass()}, {"alpha", config.molecule.half_separation()}}},
      {"beam", {{"k", config.beam.wavenumber()}, {"amplitudes", amps}}},
      {"potential", {{"kind", "peaks"}, {"peaks", peaks}}},
      {"engine",
       {{"variant", std::string(to_string(config.engine.variant))},
        {"compare", config.engine.compare}}},
      {"scan",
       {{"theta",
         {{"min", config.scan.theta.min},
          {"max", config.scan.theta.max},
          {"steps", config.scan.theta.steps}}},
        {"k", config.scan.k}}},
  };
}

}  // namespace rotor
