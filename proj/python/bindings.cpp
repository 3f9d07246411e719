#include <optional>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rotor/analysis.hpp"
#include "rotor/born.hpp"
#include "rotor/config.hpp"
#include "rotor/kinematics.hpp"
#include "rotor/output.hpp"
#include "rotor/potentials.hpp"
#include "rotor/profile.hpp"
#include "rotor/specfun.hpp"
#include "rotor/validation.hpp"

namespace py = pybind11;
using namespace rotor;

namespace {

EngineVariant variant_from(const std::string& name) {
  const auto v = engine_variant_from_string(name);
  if (!v) throw py::value_error("unknown engine variant: " + name);
  return *v;
}

PeakVariant peak_from(const std::string& name) {
  const auto v = peak_variant_from_string(name);
  if (!v) throw py::value_error("unknown peak variant: " + name);
  return *v;
}

py::dict profile_dict(const CrossSectionProfile& p) {
  py::dict out;
  out["variant"] = std::string(to_string(p.metadata.variant));
  out["theta"] = p.thetas;
  out["sigma"] = p.sigma;
  py::dict channels;
  for (std::size_t c = 0; c < p.channels.size(); ++c) {
    channels[py::make_tuple(p.channels[c].l_in, p.channels[c].l_out)] = p.per_channel[c];
  }
  out["channels"] = channels;
  return out;
}

CrossSectionProfile profile_from(const std::vector<double>& thetas,
                                 const std::vector<double>& sigma) {
  CrossSectionProfile p{thetas, sigma, {}, {}, {Molecule(1.0, 0.0), IncidentBeam::ground_state(1.0),
                                               PotentialSpec({{0.0, PeakShape::gaussian(1.0, 1.0)}}),
                                               EngineVariant::general}};
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Born-approximation cross sections of a rigid two-atom rotor";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<analysis::AnalysisError>(m, "AnalysisError", PyExc_ArithmeticError);

  m.def("bessel_j", &specfun::bessel_j, py::arg("n"), py::arg("x"));
  m.def(
      "bessel_j_batch",
      [](int n_max, double x) { return specfun::bessel_j_batch({n_max}, x); },
      py::arg("n_max"), py::arg("x"));

  py::class_<Molecule>(m, "Molecule")
      .def(py::init<double, double>(), py::arg("atom_mass"), py::arg("half_separation"))
      .def_property_readonly("atom_mass", &Molecule::atom_mass)
      .def_property_readonly("half_separation", &Molecule::half_separation)
      .def_property_readonly("moment_of_inertia", &Molecule::moment_of_inertia);

  py::class_<IncidentBeam>(m, "IncidentBeam")
      .def(py::init<double, IncidentBeam::Amplitudes>(), py::arg("wavenumber"),
           py::arg("amplitudes") = IncidentBeam::Amplitudes{{0, 1.0}})
      .def_property_readonly("wavenumber", &IncidentBeam::wavenumber)
      .def_property_readonly("amplitudes", &IncidentBeam::amplitudes)
      .def("weight", &IncidentBeam::weight);

  py::class_<PeakShape>(m, "PeakShape")
      .def(py::init([](const std::string& variant, double strength, double width) {
             return PeakShape(peak_from(variant), strength, width);
           }),
           py::arg("variant"), py::arg("strength"), py::arg("width"))
      .def_property_readonly("variant",
                             [](const PeakShape& s) { return std::string(to_string(s.variant())); })
      .def_property_readonly("strength", &PeakShape::strength)
      .def_property_readonly("width", &PeakShape::width);

  py::class_<PotentialSpec>(m, "PotentialSpec")
      .def(py::init([](const std::vector<std::pair<double, PeakShape>>& peaks) {
             std::vector<Peak> out;
             for (const auto& [center, shape] : peaks) out.push_back({center, shape});
             return PotentialSpec(std::move(out));
           }),
           py::arg("peaks"))
      .def_property_readonly("centers", [](const PotentialSpec& s) {
        std::vector<double> out;
        for (const auto& p : s.peaks()) out.push_back(p.center_x);
        return out;
      });

  m.def("make_grating", &potentials::make_grating, py::arg("n"), py::arg("d"), py::arg("shape"));
  m.def("ft_peak", &potentials::ft_peak, py::arg("shape"), py::arg("q"));
  m.def("ft_total", &potentials::ft_total, py::arg("spec"), py::arg("q_x"), py::arg("q_y"));
  m.def("dirichlet_amplitude", py::overload_cast<double, int>(&potentials::dirichlet_amplitude),
        py::arg("x"), py::arg("n"));

  m.def("outgoing_wavenumber", &kinematics::outgoing_wavenumber, py::arg("k"), py::arg("l_in"),
        py::arg("l_out"), py::arg("molecule"));
  m.def(
      "open_channels",
      [](const IncidentBeam& beam, const Molecule& molecule, bool parity_only) {
        std::vector<py::tuple> out;
        for (const auto& c : kinematics::open_channels(beam, molecule, parity_only)) {
          out.push_back(py::make_tuple(c.l_in, c.l_out, c.kappa, c.weight));
        }
        return out;
      },
      py::arg("beam"), py::arg("molecule"), py::arg("parity_only") = false);

  m.def("matrix_element", &born::matrix_element, py::arg("spec"), py::arg("molecule"),
        py::arg("k"), py::arg("theta"), py::arg("l_in"), py::arg("l_out"), py::arg("kappa"));
  m.def(
      "cross_section_general",
      [](double theta, const Molecule& molecule, const IncidentBeam& beam,
         const PotentialSpec& spec) {
        const auto xs = born::cross_section_general(theta, molecule, beam, spec);
        py::dict channels;
        for (const auto& c : xs.channels) {
          channels[py::make_tuple(c.channel.l_in, c.channel.l_out)] = c.sigma;
        }
        return py::make_tuple(xs.sigma, channels);
      },
      py::arg("theta"), py::arg("molecule"), py::arg("beam"), py::arg("spec"));
  m.def("cross_section_structureless", &born::cross_section_structureless, py::arg("theta"),
        py::arg("mass"), py::arg("k"), py::arg("spec"));
  m.def(
      "cross_section_closed",
      [](const std::string& variant, double theta, double mass, double strength, double width,
         double separation, int grating_order, double half_separation, double k) {
        born::ClosedFormParams p;
        p.mass = mass;
        p.strength = strength;
        p.width = width;
        p.separation = separation;
        p.grating_order = grating_order;
        p.half_separation = half_separation;
        p.k = k;
        return born::cross_section_closed(variant_from(variant), theta, p);
      },
      py::arg("variant"), py::arg("theta"), py::kw_only(), py::arg("mass") = 1.0,
      py::arg("strength") = 1.0, py::arg("width") = 1.0, py::arg("separation") = 0.0,
      py::arg("grating_order") = 0, py::arg("half_separation") = 0.0, py::arg("k") = 1.0);

  m.def(
      "compute_profile",
      [](const std::string& variant, const std::vector<double>& thetas, const Molecule& molecule,
         const IncidentBeam& beam, const PotentialSpec& spec, unsigned threads) {
        const auto v = variant_from(variant);
        std::optional<CrossSectionProfile> p;
        {
          py::gil_scoped_release release;
          p.emplace(compute_profile(v, thetas, molecule, beam, spec, threads));
        }
        return profile_dict(*p);
      },
      py::arg("variant"), py::arg("thetas"), py::arg("molecule"), py::arg("beam"),
      py::arg("spec"), py::arg("threads") = 1);

  m.def(
      "visibility",
      [](const std::vector<double>& thetas, const std::vector<double>& sigma, double lo,
         double hi) { return analysis::visibility(profile_from(thetas, sigma), {lo, hi}); },
      py::arg("thetas"), py::arg("sigma"), py::arg("lo"), py::arg("hi"));
  m.def(
      "peak_spacing",
      [](const std::vector<double>& thetas, const std::vector<double>& sigma, double near_theta,
         int count) {
        return analysis::peak_spacing(profile_from(thetas, sigma), near_theta, count);
      },
      py::arg("thetas"), py::arg("sigma"), py::arg("near_theta"), py::arg("count"));
  m.def(
      "suppression_ratio",
      [](const std::vector<double>& thetas, const std::vector<double>& with_internal,
         const std::vector<double>& without, double lo, double hi) {
        return analysis::suppression_ratio(profile_from(thetas, with_internal),
                                           profile_from(thetas, without), {lo, hi});
      },
      py::arg("thetas"), py::arg("with_internal"), py::arg("without"), py::arg("lo"),
      py::arg("hi"));

  m.def(
      "validate_config",
      [](const std::string& text) {
        const auto config = validate_config(nlohmann::json::parse(text));
        return output::dump_json(to_json(config), -1);
      },
      py::arg("text"), "Validates a JSON configuration; returns its canonical form.");

  m.def(
      "run_checks",
      [](const std::vector<std::string>& only, unsigned threads) {
        std::vector<validation::CheckResult> results;
        {
          py::gil_scoped_release release;
          results = validation::run_checks(only, threads);
        }
        std::vector<py::dict> out;
        for (const auto& r : results) {
          py::dict d;
          d["name"] = r.name;
          d["passed"] = r.passed;
          d["samples"] = r.samples;
          d["worst_relative"] = r.worst_relative;
          d["worst_absolute"] = r.worst_absolute;
          d["detail"] = r.detail;
          out.push_back(d);
        }
        return out;
      },
      py::arg("only") = std::vector<std::string>{}, py::arg("threads") = 1);
}
