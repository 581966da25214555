// rydcp: Casimir-Polder potentials of Rydberg atoms above layered surfaces.
#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <unistd.h>

#include "rydcp/cli/config.hpp"
#include "rydcp/cli/fit.hpp"
#include "rydcp/cli/presets.hpp"
#include "rydcp/cli/scan.hpp"
#include "rydcp/constants.hpp"
#include "rydcp/cp/regime.hpp"
#include "rydcp/em/green.hpp"
#include "rydcp/error.hpp"

namespace fs = std::filesystem;
using namespace rydcp;

namespace {

// exit codes: 0 success, 1 some scan points failed, 2 bad input
constexpr int kPointFailures = 1;
constexpr int kBadInput = 2;

struct Common {
  std::string stack = "graphene-kubo";
  std::optional<std::string> model;
  int n = 30;
  double z0 = 10e-6;
  double temperature = 10.0;
  std::optional<double> ef;
  double tol = 1e-8;
};

void add_common(CLI::App* app, Common& c, bool with_atom = true) {
  app->add_option("--stack", c.stack, "Preset name or stack file")->capture_default_str();
  app->add_option("--model", c.model, "Graphene model override")->check(CLI::IsMember({"kubo", "nonlocal"}));
  if (with_atom) app->add_option("--n", c.n, "Principal quantum number of the nS1/2 state")->capture_default_str();
  app->add_option("--z0", c.z0, "Atom-surface distance (m)")->capture_default_str();
  app->add_option("--temp", c.temperature, "Temperature (K)")->capture_default_str();
  app->add_option("--ef", c.ef, "Fermi energy of every graphene sheet (eV)");
  app->add_option("--tol", c.tol, "Matsubara relative tolerance")->capture_default_str();
}

void progress_bar(std::size_t done, std::size_t total) {
  if (!isatty(fileno(stderr))) return;
  std::fprintf(stderr, "\r  %zu/%zu points", done, total);
  if (done == total) std::fprintf(stderr, "\n");
}

void print_rows(const cli::Table& t) {
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      if (!r[i].empty()) fmt::print("{:>18}  {}\n", t.header[i], r[i]);
    }
  }
}

int write_outputs(const cli::ScanConfig& c, const cli::ScanResult& r, const std::string& out_path, bool plot) {
  cli::write_csv_file(out_path, r.table);
  std::fprintf(stderr, "wrote %s (%zu rows)\n", out_path.c_str(), r.table.rows.size());
  const auto stem = fs::path(out_path).replace_extension("").string();
  if (!r.transitions.header.empty()) {
    cli::write_csv_file(stem + "_transitions.csv", r.transitions);
    std::fprintf(stderr, "wrote %s_transitions.csv\n", stem.c_str());
  }
  if (plot) {
    std::ofstream(stem + "_plot.py") << cli::plot_script(c, out_path);
  }
  if (r.failures > 0) {
    std::fprintf(stderr, "%zu of %zu points failed; see the error column\n", r.failures, r.table.rows.size());
    return kPointFailures;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal Casimir-Polder potentials of Rydberg atoms above graphene and layered surfaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rydcp 1.0");

  // potential
  Common pot;
  bool pot_joules = false, pot_transitions = false;
  auto* potential = app.add_subcommand("potential", "Potential of one nS1/2 state at one distance");
  add_common(potential, pot);
  potential->add_flag("--joules", pot_joules, "Report energies in J instead of Hz");
  potential->add_flag("--per-transition", pot_transitions, "List resonant terms per intermediate level");

  // scan
  std::string scan_file, scan_out;
  int workers = 1;
  bool timing = false, joules = false, no_plot = false;
  auto* scan = app.add_subcommand("scan", "Run a scan described by a YAML file");
  scan->add_option("config", scan_file, "Scan file")->required()->check(CLI::ExistingFile);
  scan->add_option("--out", scan_out, "Output CSV (default: the file's `output` or <name>.csv)");
  auto add_run_flags = [&](CLI::App* a) {
    a->add_option("--workers", workers, "Concurrent scan points")->check(CLI::PositiveNumber)->capture_default_str();
    a->add_flag("--timing", timing, "Add a wall_ms column (output is then not reproducible)");
    a->add_flag("--joules", joules, "Report energies in J instead of Hz");
    a->add_flag("--no-plot", no_plot, "Do not write the plotting script");
  };
  add_run_flags(scan);

  // fit
  std::string fit_table, fit_kind = "power-law", fit_out;
  cli::FitRequest fit_req;
  auto* fit = app.add_subcommand("fit", "Fit a scan table; prints a JSON report");
  fit->add_option("table", fit_table, "CSV written by scan")->required()->check(CLI::ExistingFile);
  fit->add_option("--kind", fit_kind, "power-law | c3-two-term | c3-single | empirical | oscillation | linear-T")
      ->capture_default_str();
  fit->add_option("--column", fit_req.column, "Potential column")->capture_default_str();
  fit->add_option("--lambda-start", fit_req.lambda_start, "Oscillation fits: retarded-zone wavelength (m)");
  fit->add_option("--out", fit_out, "Write the report here instead of stdout");

  // conductivity
  double cond_omega = 9.88e11, cond_q = 0.0, cond_gamma = 4e12, cond_temp = 300.0, cond_ef = 0.1;
  std::string cond_model = "kubo";
  auto* conductivity = app.add_subcommand("conductivity", "Graphene sheet conductivity at one (omega, q)");
  conductivity->add_option("--omega", cond_omega, "Angular frequency (rad/s)")->capture_default_str();
  conductivity->add_option("--q", cond_q, "Wavenumber (1/m), non-local model only")->capture_default_str();
  conductivity->add_option("--ef", cond_ef, "Fermi energy (eV)")->capture_default_str();
  conductivity->add_option("--temp", cond_temp, "Temperature (K)")->capture_default_str();
  conductivity->add_option("--gamma", cond_gamma, "Relaxation rate (rad/s)")->capture_default_str();
  conductivity->add_option("--model", cond_model)->check(CLI::IsMember({"kubo", "nonlocal"}))->capture_default_str();

  // greens
  Common gr;
  std::optional<double> gr_omega, gr_xi;
  auto* greens = app.add_subcommand("greens", "Scattering Green tensor at one distance");
  add_common(greens, gr, false);
  auto* om = greens->add_option("--omega", gr_omega, "Real angular frequency (rad/s)");
  greens->add_option("--xi", gr_xi, "Imaginary frequency (rad/s)")->excludes(om);

  // describe
  Common de;
  auto* describe = app.add_subcommand("describe", "Summarise a stack and the regime of an nS1/2 atom above it");
  add_common(describe, de);

  // preset
  std::string preset_name, preset_dir = ".";
  bool preset_list = false, preset_show = false;
  auto* preset = app.add_subcommand("preset", "Run a built-in scan preset (fig2 ... fig13)");
  preset->add_option("name", preset_name, "Preset or preset group");
  preset->add_flag("--list", preset_list, "List the presets");
  preset->add_flag("--show", preset_show, "Print the preset YAML instead of running it");
  preset->add_option("--out", preset_dir, "Output directory")->capture_default_str();
  add_run_flags(preset);

  CLI11_PARSE(app, argc, argv);

  try {
    cli::ScanOptions opts;
    opts.workers = workers;
    opts.timing = timing;
    opts.joules = joules;
    opts.progress = progress_bar;

    if (*potential) {
      cli::ScanConfig c;
      c.name = "potential";
      c.stack = pot.stack;
      c.model = pot.model;
      c.n = pot.n;
      c.temperature = pot.temperature;
      c.fermi_energy_ev = pot.ef;
      c.tolerance = pot.tol;
      c.per_transition = pot_transitions;
      c.axes = {{"z0", {pot.z0}}};
      cli::ScanOptions o;
      o.joules = pot_joules;
      const auto r = cli::run_scan(c, o);
      print_rows(r.table);
      if (pot_transitions) {
        fmt::print("\n");
        cli::write_csv(std::cout, r.transitions);
      }
      return r.failures ? kPointFailures : 0;
    }

    if (*scan) {
      auto c = cli::load_scan_file(scan_file);
      std::string out = scan_out.empty() ? c.output : scan_out;
      if (out.empty()) out = (c.name.empty() ? fs::path(scan_file).stem().string() : c.name) + ".csv";
      const auto r = cli::run_scan(c, opts);
      return write_outputs(c, r, out, c.plot && !no_plot);
    }

    if (*fit) {
      fit_req.kind = cli::parse_fit_kind(fit_kind);
      const auto report = cli::run_fit(cli::read_csv_file(fit_table), fit_req).dump(2);
      if (fit_out.empty()) {
        std::cout << report << '\n';
      } else {
        std::ofstream(fit_out) << report << '\n';
      }
      return 0;
    }

    if (*conductivity) {
      cli::ScanConfig c;
      c.kind = cli::ScanKind::Conductivity;
      c.model = cond_model;
      c.q = cond_q;
      c.gamma = cond_gamma;
      c.temperature = cond_temp;
      c.fermi_energy_ev = cond_ef;
      c.axes = {{"omega", {cond_omega}}};
      const auto r = cli::run_scan(c);
      print_rows(r.table);
      return r.failures ? kPointFailures : 0;
    }

    if (*greens) {
      const auto stack = cli::apply_stack_overrides(cli::resolve_stack(gr.stack).stack, gr.model, gr.ef, gr.ef,
                                                    std::nullopt);
      if (gr_xi) {
        const auto g = em::green_scattering_matsubara(stack, gr.z0, *gr_xi, gr.temperature);
        fmt::print("xi = {} rad/s, z0 = {} m\n", *gr_xi, gr.z0);
        fmt::print("h_xx = {}\nh_zz = {}\n", g.h_xx, g.h_zz);
        if (*gr_xi > 0.0) fmt::print("G_xx = {}\nG_zz = {}\n", g.g.xx.real(), g.g.zz.real());
      } else {
        if (!gr_omega) throw InvalidArgument("greens needs --omega or --xi");
        const auto [e, p] = em::green_scattering_real(stack, gr.z0, *gr_omega, gr.temperature);
        fmt::print("omega = {} rad/s, z0 = {} m\n", *gr_omega, gr.z0);
        fmt::print("evanescent  G_xx = {} {:+}i   G_zz = {} {:+}i\n", e.xx.real(), e.xx.imag(), e.zz.real(),
                   e.zz.imag());
        fmt::print("propagating G_xx = {} {:+}i   G_zz = {} {:+}i\n", p.xx.real(), p.xx.imag(), p.zz.real(),
                   p.zz.imag());
      }
      return 0;
    }

    if (*describe) {
      const auto spec = cli::resolve_stack(de.stack);
      const auto stack = cli::apply_stack_overrides(spec.stack, de.model, de.ef, de.ef, std::nullopt);
      if (!spec.name.empty()) fmt::print("{}\n", spec.name);
      fmt::print("{}", stack.describe());
      const atomic::Atom atom;
      const auto u = atomic::s_state(de.n);
      const auto r = cp::regime_report(atom, u, de.z0, de.temperature);
      fmt::print("\n{} at z0 = {} um, T = {} K (limits need a factor {} separation)\n", u.label(), de.z0 * 1e6,
                 de.temperature, r.margin);
      fmt::print("  omega-/+      {:.4g} / {:.4g} rad/s\n", r.omega_minus, r.omega_plus);
      fmt::print("  z_omega       {:.4g} um (c/omega+), {:.4g} um (c/omega-)\n", r.z_omega * 1e6,
                 r.z_omega_minus * 1e6);
      fmt::print("  z_T           {:.4g} um\n", r.z_T * 1e6);
      fmt::print("  T_z           {:.4g} K\n", r.T_z);
      fmt::print("  T_omega       {:.4g} K (omega+), {:.4g} K (omega-)\n", r.T_omega, r.T_omega_minus);
      fmt::print("  regime        {}\n", r.flags());
      return 0;
    }

    if (*preset) {
      if (preset_list || preset_name.empty()) {
        for (const auto& n : cli::preset_names()) fmt::print("{}\n", n);
        return 0;
      }
      const auto configs = cli::expand_preset(preset_name);
      if (preset_show) {
        for (const auto& c : configs) fmt::print("# {}\n{}\n", c.name, *cli::preset_text(c.name));
        return 0;
      }
      fs::create_directories(preset_dir);
      int status = 0;
      for (const auto& c : configs) {
        std::fprintf(stderr, "%s\n", c.name.c_str());
        const auto r = cli::run_scan(c, opts);
        status = std::max(status, write_outputs(c, r, (fs::path(preset_dir) / c.output).string(), !no_plot));
      }
      return status;
    }
  } catch (const cli::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kBadInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBadInput;
  }
  return 0;
}
