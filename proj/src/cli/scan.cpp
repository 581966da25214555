#include "rydcp/cli/scan.hpp"

#include <fmt/format.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <tuple>

#include "rydcp/constants.hpp"
#include "rydcp/cp/potential.hpp"
#include "rydcp/cp/regime.hpp"
#include "rydcp/error.hpp"
#include "rydcp/materials/graphene.hpp"
#include "rydcp/materials/lindhard.hpp"

namespace rydcp::cli {

namespace {

namespace fs = std::filesystem;

struct Point {
  int n = 0;
  double z0 = 0.0;
  std::optional<double> z0_lambda;
  double temperature = 0.0;
  std::optional<double> ef_top, ef_bottom;
  std::optional<double> spacing;
  double omega = 0.0;
  double q = 0.0;
  double x = 0.0, y = 0.0;  // q / k_F and hbar omega / E_F
};

Point base_point(const ScanConfig& c) {
  Point p;
  p.n = c.n;
  p.z0 = c.z0;
  p.temperature = c.temperature;
  if (c.fermi_energy_ev) p.ef_top = p.ef_bottom = c.fermi_energy_ev;
  p.spacing = c.spacing;
  p.omega = c.omega;
  p.q = c.q;
  return p;
}

void set_coordinate(Point& p, const std::string& axis, double v) {
  if (axis == "z0") p.z0 = v;
  else if (axis == "z0_lambda") p.z0_lambda = v;
  else if (axis == "T") p.temperature = v;
  else if (axis == "n") p.n = static_cast<int>(v);
  else if (axis == "ef") p.ef_top = p.ef_bottom = v;
  else if (axis == "ef_top") p.ef_top = v;
  else if (axis == "ef_bottom") p.ef_bottom = v;
  else if (axis == "d") p.spacing = v;
  else if (axis == "omega") p.omega = v;
  else if (axis == "q") p.q = v;
  else if (axis == "q_over_kf") p.x = v;
  else if (axis == "hw_over_ef") p.y = v;
}

std::vector<Point> grid_points(const ScanConfig& c) {
  std::vector<Point> out;
  const auto& a0 = c.axes[0];
  const Axis* a1 = c.axes.size() > 1 ? &c.axes[1] : nullptr;
  for (double v0 : a0.values) {
    const std::size_t inner = a1 ? a1->values.size() : 1;
    for (std::size_t j = 0; j < inner; ++j) {
      Point p = base_point(c);
      set_coordinate(p, a0.name, v0);
      if (a1) set_coordinate(p, a1->name, a1->values[j]);
      out.push_back(p);
    }
  }
  return out;
}

std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + '"';
}

materials::MaterialModel override_sheet(materials::MaterialModel m, const std::optional<std::string>& model,
                                        const std::optional<double>& ef) {
  materials::GrapheneParams params;
  if (auto* g = std::get_if<materials::KuboGraphene>(&m)) params = g->params;
  else if (auto* g = std::get_if<materials::NonlocalGraphene>(&m)) params = g->params;
  else return m;
  if (ef) params.fermi_energy_ev = *ef;
  const bool nonlocal = model ? *model == "nonlocal" : materials::is_nonlocal(m);
  if (nonlocal) return materials::NonlocalGraphene{params};
  return materials::KuboGraphene{params};
}

}  // namespace

em::LayerStack apply_stack_overrides(const em::LayerStack& base, const std::optional<std::string>& model,
                                     const std::optional<double>& ef_top, const std::optional<double>& ef_bottom,
                                     const std::optional<double>& spacing) {
  auto layers = base.layers();
  auto sheets = base.sheets();
  std::vector<std::size_t> present;
  for (std::size_t i = 0; i < sheets.size(); ++i) {
    if (sheets[i]) present.push_back(i);
  }
  for (std::size_t k = 0; k < present.size(); ++k) {
    auto& s = sheets[present[k]];
    const bool top = k == 0;
    const bool bottom = k + 1 == present.size();
    std::optional<double> ef;
    if (top && ef_top) ef = ef_top;
    if (bottom && !top && ef_bottom) ef = ef_bottom;
    *s = override_sheet(*s, model, ef);
  }
  if ((ef_top || ef_bottom) && present.empty()) throw InvalidArgument("Fermi energy set but the stack has no graphene");
  if (spacing) {
    std::size_t finite = 0, index = 0;
    for (std::size_t i = 0; i < layers.size(); ++i) {
      if (!std::isinf(layers[i].thickness)) {
        ++finite;
        index = i;
      }
    }
    if (finite != 1) throw InvalidArgument("spacing d needs a stack with exactly one finite layer");
    layers[index].thickness = *spacing;
  }
  return em::LayerStack(std::move(layers), std::move(sheets));
}

namespace {

struct Environment {
  Environment(em::LayerStack s, const atomic::Atom& atom, cp::CPOptions opt)
      : stack(std::move(s)), calc(atom, stack, std::move(opt)) {}
  em::LayerStack stack;
  cp::Calculator calc;
};

using EnvKey = std::tuple<std::optional<double>, std::optional<double>, std::optional<double>>;

class PotentialRunner {
 public:
  PotentialRunner(const ScanConfig& c, const ScanOptions& o) : config_(c), options_(o) {
    std::string name = c.stack;
    if (!c.stack_base_dir.empty() && fs::path(name).is_relative() && fs::exists(fs::path(c.stack_base_dir) / name)) {
      name = (fs::path(c.stack_base_dir) / name).string();
    }
    base_ = resolve_stack(name).stack;
    opt_.matsubara_tol = c.tolerance;
    opt_.basis.half_width = c.basis_half_width;
  }

  std::vector<std::string> header() const {
    const std::string u = options_.joules ? "J" : "Hz";
    std::vector<std::string> h{"n",        "z0_m",          "z0_um",          "T_K",          "ef_top_eV",
                               "ef_bottom_eV", "d_m",       "d_nm",           "model",        "u_nres_" + u,
                               "u_res_evan_" + u, "u_res_prop_" + u, "u_total_" + u, "matsubara_terms", "regime"};
    if (options_.timing) h.push_back("wall_ms");
    h.push_back("error");
    return h;
  }

  std::vector<std::string> row(const Point& p, std::vector<std::vector<std::string>>& transitions,
                               std::size_t index) {
    const auto t0 = std::chrono::steady_clock::now();
    const double scale = options_.joules ? constants::h : 1.0;
    std::vector<std::string> r(header().size());
    r[0] = std::to_string(p.n);
    r[3] = format_number(p.temperature);
    r[4] = opt_number(p.ef_top);
    r[5] = opt_number(p.ef_bottom);
    r[6] = opt_number(p.spacing);
    r[7] = p.spacing ? format_number(*p.spacing * 1e9) : std::string();
    r[8] = config_.model.value_or("stack");
    try {
      const auto u = atomic::s_state(p.n);
      double z0 = p.z0;
      if (p.z0_lambda) {
        const atomic::AtomicState down{p.n - 1, 1, 1, 1};
        const double w = std::abs(atom_.transition_frequency(u, down));
        z0 = *p.z0_lambda * 2.0 * constants::pi * constants::c / w;
      }
      r[1] = format_number(z0);
      r[2] = format_number(z0 * 1e6);
      auto& env = environment(p);
      const auto b = env.calc.total(u, z0, p.temperature);
      r[9] = format_number(b.nonresonant * scale);
      r[10] = format_number(b.resonant_evanescent * scale);
      r[11] = format_number(b.resonant_propagating * scale);
      r[12] = format_number(b.total * scale);
      r[13] = std::to_string(b.matsubara_terms);
      r[14] = cp::regime_report(atom_, u, z0, p.temperature).flags();
      if (config_.per_transition) {
        for (const auto& t : b.per_transition) {
          transitions.push_back({std::to_string(index), std::to_string(p.n), r[1], r[3], t.level.label(),
                                 format_number(t.omega), format_number(t.evanescent * scale),
                                 format_number(t.propagating * scale), format_number(t.total * scale),
                                 format_number(t.share)});
        }
      }
    } catch (const std::exception& e) {
      r.back() = e.what();
    }
    if (options_.timing) {
      const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      r[r.size() - 2] = fmt::format("{:.3f}", ms);
    }
    return r;
  }

  static std::vector<std::string> transition_header(bool joules) {
    const std::string u = joules ? "J" : "Hz";
    return {"point", "n", "z0_m", "T_K", "level", "omega_rad_s", "evanescent_" + u, "propagating_" + u,
            "total_" + u, "share"};
  }

 private:
  Environment& environment(const Point& p) {
    const EnvKey key{p.ef_top, p.ef_bottom, p.spacing};
    std::lock_guard lock(mutex_);
    auto it = envs_.find(key);
    if (it == envs_.end()) {
      auto stack = apply_stack_overrides(base_, config_.model, p.ef_top, p.ef_bottom, p.spacing);
      it = envs_.emplace(key, std::make_unique<Environment>(std::move(stack), atom_, opt_)).first;
    }
    return *it->second;
  }

  const ScanConfig& config_;
  const ScanOptions& options_;
  atomic::Atom atom_;
  em::LayerStack base_;
  cp::CPOptions opt_;
  std::mutex mutex_;
  std::map<EnvKey, std::unique_ptr<Environment>> envs_;
};

materials::GrapheneParams graphene_for(const ScanConfig& c, const Point& p) {
  materials::GrapheneParams g;
  g.fermi_energy_ev = p.ef_top.value_or(0.1);
  g.gamma = c.gamma;
  return g;
}

std::vector<std::string> conductivity_header(const ScanOptions& o) {
  std::vector<std::string> h{"omega_rad_s", "q_per_m", "T_K", "ef_eV", "model", "sigma_re_S", "sigma_im_S",
                             "sigma_re_over_sigma0", "sigma_im_over_sigma0"};
  if (o.timing) h.push_back("wall_ms");
  h.push_back("error");
  return h;
}

std::vector<std::string> conductivity_row(const ScanConfig& c, const ScanOptions& o, const Point& p) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> r(conductivity_header(o).size());
  const std::string model = c.model.value_or("kubo");
  const auto g = graphene_for(c, p);
  r[0] = format_number(p.omega);
  r[1] = format_number(p.q);
  r[2] = format_number(p.temperature);
  r[3] = format_number(g.fermi_energy_ev);
  r[4] = model;
  try {
    std::complex<double> s;
    if (model == "nonlocal") {
      if (!(p.q > 0.0)) throw InvalidArgument("non-local conductivity needs q > 0");
      auto gt = g;
      gt.temperature = p.temperature;
      s = materials::nonlocal_conductivity(p.q, p.omega, gt);
    } else {
      s = materials::kubo_conductivity(p.omega, g, p.temperature);
    }
    r[5] = format_number(s.real());
    r[6] = format_number(s.imag());
    r[7] = format_number(s.real() / constants::sigma0);
    r[8] = format_number(s.imag() / constants::sigma0);
  } catch (const std::exception& e) {
    r.back() = e.what();
  }
  if (o.timing) {
    r[r.size() - 2] =
        fmt::format("{:.3f}", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return r;
}

std::vector<std::string> polarizability_header(const ScanOptions& o) {
  std::vector<std::string> h{"q_over_kf", "hw_over_ef", "region", "p_re", "p_im", "p_gamma_re", "p_gamma_im"};
  if (o.timing) h.push_back("wall_ms");
  h.push_back("error");
  return h;
}

std::vector<std::string> polarizability_row(const ScanConfig& c, const ScanOptions& o, const Point& p) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> r(polarizability_header(o).size());
  const auto g = graphene_for(c, p);
  r[0] = format_number(p.x);
  r[1] = format_number(p.y);
  try {
    r[2] = std::string(materials::region_label(materials::classify_region(p.x, p.y)));
    const double q = p.x * materials::fermi_wavenumber(g);
    const double w = p.y * g.fermi_energy() / constants::hbar;
    const auto pl = materials::lindhard_polarizability(q, w, g);
    const auto pg = materials::rpa_rt_polarizability(q, w, g);
    if (!std::isfinite(std::abs(pl)) || !std::isfinite(std::abs(pg))) {
      throw InvalidArgument("polarizability is singular here (y = x or y = 2 - x boundary)");
    }
    r[3] = format_number(pl.real());
    r[4] = format_number(pl.imag());
    r[5] = format_number(pg.real());
    r[6] = format_number(pg.imag());
  } catch (const std::exception& e) {
    r.back() = e.what();
  }
  if (o.timing) {
    r[r.size() - 2] =
        fmt::format("{:.3f}", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return r;
}

// Parallel map with results stored by index, so the output order never depends
// on scheduling.
template <class F>
void parallel_for(std::size_t count, int workers, const ScanOptions& o, F&& body) {
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      body(i);
      const std::size_t d = ++done;
      if (o.progress) {
        std::lock_guard lock(progress_mutex);
        o.progress(d, count);
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
}

}  // namespace

std::string format_number(double v) { return fmt::format("{}", v); }

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw InvalidArgument("table has no column '" + name + "'");
}

bool Table::has_column(const std::string& name) const {
  for (const auto& h : header) {
    if (h == name) return true;
  }
  return false;
}

ScanResult run_scan(const ScanConfig& config, const ScanOptions& options) {
  config.validate();
  const auto points = grid_points(config);
  ScanResult out;
  std::vector<std::vector<std::string>> rows(points.size());
  if (config.kind == ScanKind::Potential) {
    PotentialRunner runner(config, options);
    out.table.header = runner.header();
    std::vector<std::vector<std::vector<std::string>>> per(points.size());
    parallel_for(points.size(), options.workers, options,
                 [&](std::size_t i) { rows[i] = runner.row(points[i], per[i], i); });
    if (config.per_transition) {
      out.transitions.header = PotentialRunner::transition_header(options.joules);
      for (auto& block : per) {
        for (auto& r : block) out.transitions.rows.push_back(std::move(r));
      }
    }
  } else if (config.kind == ScanKind::Conductivity) {
    out.table.header = conductivity_header(options);
    parallel_for(points.size(), options.workers, options,
                 [&](std::size_t i) { rows[i] = conductivity_row(config, options, points[i]); });
  } else {
    out.table.header = polarizability_header(options);
    parallel_for(points.size(), options.workers, options,
                 [&](std::size_t i) { rows[i] = polarizability_row(config, options, points[i]); });
  }
  for (const auto& r : rows) {
    if (!r.back().empty()) ++out.failures;
  }
  out.table.rows = std::move(rows);
  return out;
}

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << csv_escape(t.header[i]);
  out << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_escape(r[i]);
    out << '\n';
  }
}

void write_csv_file(const std::string& path, const Table& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  write_csv(out, t);
}

Table read_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char ch = line[i];
      if (quoted) {
        if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else if (ch == '"') {
          quoted = false;
        } else {
          cell += ch;
        }
      } else if (ch == '"') {
        quoted = true;
      } else if (ch == ',') {
        cells.push_back(cell);
        cell.clear();
      } else if (ch != '\r') {
        cell += ch;
      }
    }
    cells.push_back(cell);
    return cells;
  };
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("empty table");
  t.header = split(line);
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != t.header.size()) {
      throw InvalidArgument("table line " + std::to_string(number) + " has " + std::to_string(cells.size()) +
                            " cells, header has " + std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

Table read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return read_csv(in);
}

std::string plot_script(const ScanConfig& c, const std::string& csv_path) {
  const std::string file = fs::path(csv_path).filename().string();
  std::string x = c.axes[0].name;
  std::string group = c.axes.size() > 1 ? c.axes[1].name : "";
  auto column_of = [&](const std::string& axis) -> std::string {
    if (axis == "z0" || axis == "z0_lambda") return "z0_um";
    if (axis == "T") return "T_K";
    if (axis == "n") return "n";
    if (axis == "ef" || axis == "ef_top") return c.kind == ScanKind::Potential ? "ef_top_eV" : "ef_eV";
    if (axis == "ef_bottom") return "ef_bottom_eV";
    if (axis == "d") return "d_nm";
    if (axis == "omega") return "omega_rad_s";
    if (axis == "q") return "q_per_m";
    return axis;
  };
  std::vector<std::string> ys;
  if (c.kind == ScanKind::Potential) ys = {"u_total_Hz", "u_nres_Hz", "u_res_evan_Hz", "u_res_prop_Hz"};
  if (c.kind == ScanKind::Conductivity) ys = {"sigma_re_over_sigma0", "sigma_im_over_sigma0"};
  if (c.kind == ScanKind::Polarizability) ys = {"p_gamma_re", "p_gamma_im"};
  const bool map = !group.empty() && c.axes[1].values.size() > 8;
  std::string s;
  s += "#!/usr/bin/env python3\n";
  s += "# Plot for scan '" + c.name + "'. Run from the directory holding the CSV.\n";
  s += "import csv\nimport sys\n\nimport matplotlib\nmatplotlib.use('Agg')\nimport matplotlib.pyplot as plt\nimport numpy as np\n\n";
  s += "path = sys.argv[1] if len(sys.argv) > 1 else '" + file + "'\n";
  s += "with open(path) as f:\n    rows = [r for r in csv.DictReader(f) if not r['error']]\n\n";
  s += "def col(name, rs=None):\n    return np.array([float(r[name]) for r in (rs if rs is not None else rows)])\n\n";
  s += "x_name = '" + column_of(x) + "'\n";
  s += "ys = [";
  for (std::size_t i = 0; i < ys.size(); ++i) s += (i ? ", '" : "'") + ys[i] + "'";
  s += "]\n";
  if (map) {
    s += "g_name = '" + column_of(group) + "'\n";
    s += "xs = np.unique(col(x_name))\ngs = np.unique(col(g_name))\n";
    s += "z = col(ys[0]).reshape(len(xs), len(gs))\n";
    s += "fig, ax = plt.subplots()\nm = ax.pcolormesh(gs, xs, z, shading='nearest')\nfig.colorbar(m, label=ys[0])\n";
    s += "ax.set_xlabel(g_name)\nax.set_ylabel(x_name)\n";
  } else if (!group.empty()) {
    s += "g_name = '" + column_of(group) + "'\n";
    s += "fig, ax = plt.subplots()\n";
    s += "for g in sorted(set(r[g_name] for r in rows), key=float):\n";
    s += "    sub = [r for r in rows if r[g_name] == g]\n";
    s += "    ax.plot(col(x_name, sub), col(ys[0], sub), label=f'{g_name} = {g}')\n";
    s += "ax.set_xlabel(x_name)\nax.set_ylabel(ys[0])\nax.legend()\n";
  } else {
    s += "fig, ax = plt.subplots()\nfor y in ys:\n    ax.plot(col(x_name), col(y), label=y)\n";
    s += "ax.set_xlabel(x_name)\nax.legend()\n";
  }
  if (c.axes[0].name == "z0" || c.axes[0].name == "d") s += "ax.set_xscale('log')\n";
  s += "fig.tight_layout()\nfig.savefig(path.rsplit('.', 1)[0] + '.png', dpi=150)\n";
  return s;
}

}  // namespace rydcp::cli
