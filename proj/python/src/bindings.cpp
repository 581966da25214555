#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <charconv>
#include <optional>
#include <string>

#include "rydcp/atomic/atom.hpp"
#include "rydcp/cli/config.hpp"
#include "rydcp/cli/presets.hpp"
#include "rydcp/cli/scan.hpp"
#include "rydcp/constants.hpp"
#include "rydcp/materials/graphene.hpp"
#include "rydcp/materials/lindhard.hpp"

namespace py = pybind11;
using namespace rydcp;

namespace {

// numeric cells become floats, everything else stays a string
py::object cell(const std::string& s) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && end == s.data() + s.size() && !s.empty()) return py::float_(v);
  return py::str(s);
}

py::list records(const cli::Table& t) {
  py::list out;
  for (const auto& row : t.rows) {
    py::dict d;
    for (std::size_t i = 0; i < t.header.size(); ++i) d[py::str(t.header[i])] = cell(row[i]);
    out.append(d);
  }
  return out;
}

materials::GrapheneParams graphene(double ef_ev, double gamma, std::optional<double> temperature) {
  materials::GrapheneParams p;
  p.fermi_energy_ev = ef_ev;
  p.gamma = gamma;
  p.temperature = temperature;
  p.validate();
  return p;
}

const atomic::Atom& atom() {
  static const atomic::Atom a;
  return a;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Casimir-Polder potentials of Rydberg atoms near graphene and layered surfaces";
  py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def(
      "scan",
      [](const std::string& text, int workers, bool joules, const std::string& base_dir) {
        auto cfg = cli::parse_scan(text, "<python>");
        if (!base_dir.empty()) cfg.stack_base_dir = base_dir;
        cli::ScanOptions opt;
        opt.workers = workers;
        opt.joules = joules;
        cli::ScanResult r;
        {
          py::gil_scoped_release release;
          r = cli::run_scan(cfg, opt);
        }
        py::dict out;
        out["rows"] = records(r.table);
        out["transitions"] = records(r.transitions);
        out["failures"] = r.failures;
        return out;
      },
      py::arg("config"), py::arg("workers") = 1, py::arg("joules") = false, py::arg("base_dir") = "",
      "Run a scan described by YAML text; returns rows as dicts (same columns as the CSV).");

  m.def(
      "potential",
      [](int n, double z0, double temperature, const std::string& stack, std::optional<std::string> model,
         std::optional<double> ef_ev, double tolerance) {
        cli::ScanConfig cfg;
        cfg.stack = stack;
        cfg.model = std::move(model);
        cfg.n = n;
        cfg.z0 = z0;
        cfg.temperature = temperature;
        cfg.fermi_energy_ev = ef_ev;
        cfg.tolerance = tolerance;
        cfg.plot = false;
        cfg.axes = {{"z0", {z0}}};
        cli::ScanResult r;
        {
          py::gil_scoped_release release;
          r = cli::run_scan(cfg);
        }
        const auto& t = r.table;
        const auto& row = t.rows.at(0);
        if (!row.back().empty()) throw std::runtime_error(row.back());
        py::dict out;
        for (const char* key : {"u_nres_Hz", "u_res_evan_Hz", "u_res_prop_Hz", "u_total_Hz", "matsubara_terms"}) {
          out[key] = cell(row[t.column(key)]);
        }
        out["regime"] = row[t.column("regime")];
        return out;
      },
      py::arg("n"), py::arg("z0"), py::arg("temperature"), py::arg("stack") = "graphene-kubo",
      py::arg("model") = py::none(), py::arg("ef_ev") = py::none(), py::arg("tolerance") = 1e-8,
      "Potential U/h (Hz) of the nS state at distance z0 (m) and temperature (K), split into parts.");

  m.def(
      "kubo_conductivity",
      [](std::complex<double> omega, double ef_ev, double temperature, double gamma) {
        return materials::kubo_conductivity(omega, graphene(ef_ev, gamma, std::nullopt), temperature);
      },
      py::arg("omega"), py::arg("ef_ev") = 0.1, py::arg("temperature") = 300.0, py::arg("gamma") = 4e12,
      "Local sheet conductivity (S); omega real positive or i*xi.");

  m.def(
      "nonlocal_conductivity",
      [](double q, std::complex<double> omega, double ef_ev, double gamma) {
        return materials::nonlocal_conductivity(q, omega, graphene(ef_ev, gamma, std::nullopt));
      },
      py::arg("q"), py::arg("omega"), py::arg("ef_ev") = 0.1, py::arg("gamma") = 4e12);

  m.def(
      "polarizability",
      [](double q_over_kf, double hw_over_ef, double ef_ev, double gamma) {
        const auto p = graphene(ef_ev, gamma, std::nullopt);
        const double q = q_over_kf * materials::fermi_wavenumber(p);
        const double w = hw_over_ef * p.fermi_energy() / constants::hbar;
        py::dict out;
        out["region"] = std::string(materials::region_label(materials::classify_region(q_over_kf, hw_over_ef)));
        out["p"] = materials::lindhard_polarizability(q, w, p);
        out["p_gamma"] = materials::rpa_rt_polarizability(q, w, p);
        return out;
      },
      py::arg("q_over_kf"), py::arg("hw_over_ef"), py::arg("ef_ev") = 0.1, py::arg("gamma") = 4e12,
      "Lindhard P and relaxation-time corrected P_gamma (1/(J m^2)) at reduced coordinates.");

  m.def(
      "transition_frequency",
      [](const std::string& from, const std::string& to) {
        return atom().transition_frequency(atomic::parse_state(from), atomic::parse_state(to));
      },
      py::arg("from_state"), py::arg("to_state"), "omega = (E_to - E_from) / hbar (rad/s) for labels like '30S1/2'.");

  m.def(
      "describe_stack", [](const std::string& name) { return cli::resolve_stack(name).stack.describe(); },
      py::arg("name"));
  m.def("preset_names", &cli::preset_names);
  m.def("preset_text", &cli::preset_text, py::arg("name"));
}
