#include "rydcp/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "rydcp/cli/presets.hpp"
#include "rydcp/error.hpp"

namespace rydcp::cli {

namespace {

namespace fs = std::filesystem;

struct Ctx {
  std::string source;

  [[noreturn]] void fail(const YAML::Node& n, const std::string& what) const {
    throw ConfigError(source, n.IsDefined() ? n.Mark().line + 1 : 0, what);
  }

  double number(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, "field '" + field + "' must be a number");
    try {
      std::size_t used = 0;
      const std::string s = n.Scalar();
      const double v = std::stod(s, &used);
      if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail(n, "field '" + field + "' is not a number: '" + n.Scalar() + "'");
    }
  }

  int integer(const YAML::Node& n, const std::string& field) const {
    const double v = number(n, field);
    if (v != std::floor(v) || std::abs(v) > 1e9) fail(n, "field '" + field + "' must be an integer");
    return static_cast<int>(v);
  }

  std::string text(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, "field '" + field + "' must be a string");
    return n.Scalar();
  }

  bool flag(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, "field '" + field + "' must be true or false");
    const auto& s = n.Scalar();
    if (s == "true" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "no" || s == "off") return false;
    fail(n, "field '" + field + "' must be true or false");
  }

  void only_keys(const YAML::Node& n, const std::set<std::string>& allowed, const std::string& what) const {
    if (!n.IsMap()) fail(n, what + " must be a mapping");
    for (const auto& kv : n) {
      const auto key = kv.first.Scalar();
      if (!allowed.count(key)) fail(kv.first, "unknown field '" + key + "' in " + what);
    }
  }

  void check_version(const YAML::Node& root) const {
    const auto v = root["version"];
    if (!v) fail(root, "missing field 'version'");
    if (integer(v, "version") != kConfigVersion) {
      fail(v, "unsupported version " + v.Scalar() + " (expected " + std::to_string(kConfigVersion) + ")");
    }
  }
};

YAML::Node load_yaml(const std::string& text, const std::string& source) {
  try {
    auto root = YAML::Load(text);
    if (!root.IsMap()) throw ConfigError(source, root.IsDefined() ? root.Mark().line + 1 : 1, "top level must be a mapping");
    return root;
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source, e.mark.line + 1, e.msg);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

materials::GrapheneParams graphene_params(const Ctx& ctx, const YAML::Node& n) {
  materials::GrapheneParams p;
  if (n["fermi_energy_ev"]) p.fermi_energy_ev = ctx.number(n["fermi_energy_ev"], "fermi_energy_ev");
  if (n["gamma"]) p.gamma = ctx.number(n["gamma"], "gamma");
  if (n["temperature"]) p.temperature = ctx.number(n["temperature"], "temperature");
  return p;
}

materials::MaterialModel material(const Ctx& ctx, const YAML::Node& n) {
  if (n.IsScalar()) {
    try {
      return materials::material_preset(n.Scalar());
    } catch (const InvalidArgument& e) {
      ctx.fail(n, e.what());
    }
  }
  ctx.only_keys(n, {"material", "model", "eps_r", "fermi_energy_ev", "gamma", "temperature", "plasma_frequency",
                    "damping"},
                "material");
  materials::MaterialModel m;
  if (n["material"]) {
    m = material(ctx, n["material"]);
  } else if (n["eps_r"]) {
    m = materials::Dielectric{ctx.number(n["eps_r"], "eps_r")};
  } else if (n["model"]) {
    const auto model = ctx.text(n["model"], "model");
    if (model == "kubo") {
      m = materials::KuboGraphene{};
    } else if (model == "nonlocal") {
      m = materials::NonlocalGraphene{};
    } else if (model == "drude") {
      m = materials::DrudeMetal{};
    } else {
      ctx.fail(n["model"], "unknown model '" + model + "' (kubo, nonlocal, drude)");
    }
  } else {
    ctx.fail(n, "material needs one of 'material', 'model' or 'eps_r'");
  }
  if (auto* g = std::get_if<materials::KuboGraphene>(&m)) g->params = graphene_params(ctx, n);
  if (auto* g = std::get_if<materials::NonlocalGraphene>(&m)) g->params = graphene_params(ctx, n);
  if (auto* d = std::get_if<materials::DrudeMetal>(&m)) {
    if (n["plasma_frequency"]) d->plasma_frequency = ctx.number(n["plasma_frequency"], "plasma_frequency");
    if (n["damping"]) d->damping = ctx.number(n["damping"], "damping");
  }
  try {
    materials::validate(m);
  } catch (const InvalidArgument& e) {
    ctx.fail(n, e.what());
  }
  return m;
}

Axis parse_axis(const Ctx& ctx, const YAML::Node& n) {
  static const std::set<std::string> names{"z0", "z0_lambda", "T", "n", "ef", "ef_top", "ef_bottom", "d",
                                           "omega", "q", "q_over_kf", "hw_over_ef"};
  ctx.only_keys(n, {"name", "values", "start", "stop", "count", "spacing"}, "axis");
  Axis a;
  if (!n["name"]) ctx.fail(n, "axis needs a 'name'");
  a.name = ctx.text(n["name"], "name");
  if (!names.count(a.name)) ctx.fail(n["name"], "unknown axis '" + a.name + "'");
  if (n["values"]) {
    if (!n["values"].IsSequence()) ctx.fail(n["values"], "field 'values' must be a list");
    for (const auto& v : n["values"]) a.values.push_back(ctx.number(v, "values"));
  } else {
    for (const char* f : {"start", "stop", "count"}) {
      if (!n[f]) ctx.fail(n, std::string("axis '") + a.name + "' needs 'values' or start/stop/count (missing '" + f + "')");
    }
    bool log = false;
    if (n["spacing"]) {
      const auto s = ctx.text(n["spacing"], "spacing");
      if (s != "linear" && s != "log") ctx.fail(n["spacing"], "spacing must be 'linear' or 'log'");
      log = s == "log";
    }
    try {
      a.values = make_grid(ctx.number(n["start"], "start"), ctx.number(n["stop"], "stop"),
                           ctx.integer(n["count"], "count"), log);
    } catch (const InvalidArgument& e) {
      ctx.fail(n, "axis '" + a.name + "': " + e.what());
    }
  }
  if (a.values.empty()) ctx.fail(n, "axis '" + a.name + "' has an empty grid");
  const bool up = std::is_sorted(a.values.begin(), a.values.end(), std::less_equal<>());
  const bool down = std::is_sorted(a.values.begin(), a.values.end(), std::greater_equal<>());
  if (!up && !down) ctx.fail(n, "axis '" + a.name + "' must be strictly monotone");
  if (a.name == "n") {
    for (double v : a.values) {
      if (v != std::floor(v)) ctx.fail(n, "axis 'n' needs integer values");
    }
  }
  return a;
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
      source_(source),
      line_(line) {}

std::vector<double> make_grid(double start, double stop, int count, bool logarithmic) {
  if (count < 1) throw InvalidArgument("grid needs count >= 1");
  if (logarithmic && !(start > 0.0 && stop > 0.0)) throw InvalidArgument("log grid needs positive bounds");
  if (count == 1) return {start};
  if (start == stop) throw InvalidArgument("grid bounds coincide");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    out[static_cast<std::size_t>(i)] =
        logarithmic ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                    : (start * (count - 1 - i) + stop * i) / (count - 1);
  }
  out.front() = start;
  out.back() = stop;
  return out;
}

StackSpec parse_stack(const std::string& text, const std::string& source) {
  const Ctx ctx{source};
  const auto root = load_yaml(text, source);
  ctx.only_keys(root, {"version", "name", "stack"}, "stack file");
  ctx.check_version(root);
  StackSpec spec;
  if (root["name"]) spec.name = ctx.text(root["name"], "name");
  const auto items = root["stack"];
  if (!items || !items.IsSequence()) ctx.fail(root, "field 'stack' must be a list of sheet/layer/substrate entries");

  std::vector<em::Layer> layers{em::Layer{materials::Dielectric{1.0}, em::kInfiniteThickness, 1.0, "vacuum"}};
  std::vector<std::optional<materials::MaterialModel>> sheets{std::nullopt};
  bool closed = false;
  for (const auto& item : items) {
    if (!item.IsMap() || item.size() != 1) ctx.fail(item, "each stack entry needs exactly one of sheet, layer, substrate");
    const auto key = item.begin()->first.Scalar();
    const auto body = item.begin()->second;
    if (closed) ctx.fail(item, "nothing may follow the substrate");
    if (key == "sheet") {
      if (sheets.back()) ctx.fail(item, "two sheets on the same interface");
      auto m = material(ctx, body);
      if (!materials::is_sheet(m)) ctx.fail(body, "sheets must be graphene (model kubo or nonlocal)");
      sheets.back() = m;
    } else if (key == "layer" || key == "substrate") {
      em::Layer l;
      if (body.IsMap() && (body["thickness"] || body["mu"] || body["name"])) {
        ctx.only_keys(body, {"material", "model", "eps_r", "plasma_frequency", "damping", "thickness", "mu", "name"},
                      key);
        YAML::Node mat(YAML::NodeType::Map);
        for (const auto& kv : body) {
          const auto k = kv.first.Scalar();
          if (k != "thickness" && k != "mu" && k != "name") mat[k] = kv.second;
        }
        if (mat.size() == 0) ctx.fail(body, key + " needs a material");
        l.medium = material(ctx, mat);
        if (body["mu"]) l.mu = ctx.number(body["mu"], "mu");
        if (body["name"]) l.name = ctx.text(body["name"], "name");
        if (body["thickness"]) {
          if (key == "substrate") ctx.fail(body["thickness"], "the substrate is semi-infinite; remove 'thickness'");
          l.thickness = ctx.number(body["thickness"], "thickness");
        }
      } else {
        l.medium = material(ctx, body);
      }
      if (materials::is_sheet(l.medium)) ctx.fail(body, "graphene belongs in a 'sheet' entry");
      if (key == "layer") {
        if (!(l.thickness > 0.0) || std::isinf(l.thickness)) {
          ctx.fail(body, "layer field 'thickness' must be a finite positive length in metres");
        }
        if (l.name.empty()) l.name = "layer " + std::to_string(layers.size());
      } else {
        l.thickness = em::kInfiniteThickness;
        if (l.name.empty()) l.name = "substrate";
        closed = true;
      }
      layers.push_back(l);
      sheets.emplace_back(std::nullopt);
    } else {
      ctx.fail(item, "unknown stack entry '" + key + "' (sheet, layer, substrate)");
    }
  }
  if (!closed) {
    layers.push_back(em::Layer{materials::Dielectric{1.0}, em::kInfiniteThickness, 1.0, "vacuum"});
    sheets.emplace_back(std::nullopt);
  }
  sheets.pop_back();  // the slot opened after the substrate has no interface
  try {
    spec.stack = em::LayerStack(std::move(layers), std::move(sheets));
  } catch (const InvalidArgument& e) {
    ctx.fail(items, e.what());
  }
  return spec;
}

StackSpec load_stack_file(const std::string& path) { return parse_stack(read_file(path), path); }

StackSpec resolve_stack(const std::string& name) {
  if (name == "vacuum") return {name, em::LayerStack::vacuum()};
  if (name == "graphene-kubo" || name == "graphene-nonlocal") {
    return {name, em::LayerStack::suspended_sheet(materials::material_preset(name))};
  }
  if (name == "gold-1um") return {name, em::LayerStack::slab(materials::DrudeMetal{}, 1e-6)};
  if (name == "gold-drude") {
    return {name, em::LayerStack({em::Layer{materials::Dielectric{1.0}, em::kInfiniteThickness, 1.0, "vacuum"},
                                  em::Layer{materials::DrudeMetal{}, em::kInfiniteThickness, 1.0, "gold"}},
                                 {std::nullopt})};
  }
  if (fs::exists(name)) return load_stack_file(name);
  if (const auto text = embedded_stack(name)) return parse_stack(*text, "preset:" + name);
  throw InvalidArgument("unknown stack '" + name +
                        "' (graphene-kubo, graphene-nonlocal, gold-1um, gold-drude, vacuum, or a stack file)");
}

void ScanConfig::validate() const {
  if (axes.empty() || axes.size() > 2) throw InvalidArgument("a scan needs one or two axes");
  if (axes.size() == 2 && axes[0].name == axes[1].name) throw InvalidArgument("the two axes must differ");
  static const std::set<std::string> potential{"z0", "z0_lambda", "T", "n", "ef", "ef_top", "ef_bottom", "d"};
  static const std::set<std::string> conductivity{"omega", "ef", "T", "q"};
  static const std::set<std::string> polarizability{"q_over_kf", "hw_over_ef"};
  const auto& allowed = kind == ScanKind::Potential      ? potential
                        : kind == ScanKind::Conductivity ? conductivity
                                                         : polarizability;
  for (const auto& a : axes) {
    if (!allowed.count(a.name)) throw InvalidArgument("axis '" + a.name + "' does not apply to this scan kind");
    if (a.values.empty()) throw InvalidArgument("axis '" + a.name + "' has an empty grid");
  }
  if (axes.size() == 2 && (axes[0].name.rfind("z0", 0) == 0) && (axes[1].name.rfind("z0", 0) == 0)) {
    throw InvalidArgument("z0 and z0_lambda cannot both be scanned");
  }
  if (model && *model != "kubo" && *model != "nonlocal") throw InvalidArgument("model must be kubo or nonlocal");
  if (!(tolerance > 0.0 && tolerance < 1e-2)) throw InvalidArgument("tolerance must be in (0, 0.01)");
  if (n < 1) throw InvalidArgument("n must be positive");
  if (!(z0 > 0.0)) throw InvalidArgument("z0 must be positive");
  if (!(temperature >= 0.0)) throw InvalidArgument("temperature must be >= 0");
  if (basis_half_width < 1) throw InvalidArgument("basis half width must be >= 1");
}

ScanConfig parse_scan(const std::string& text, const std::string& source) {
  const Ctx ctx{source};
  const auto root = load_yaml(text, source);
  ctx.only_keys(root, {"version", "name", "kind", "stack", "model", "n", "z0", "temperature", "fermi_energy_ev",
                       "spacing", "omega", "q", "gamma", "tolerance", "basis_half_width", "per_transition", "plot",
                       "output", "axes"},
                "scan config");
  ctx.check_version(root);
  ScanConfig c;
  if (root["name"]) c.name = ctx.text(root["name"], "name");
  if (root["kind"]) {
    const auto k = ctx.text(root["kind"], "kind");
    if (k == "potential") {
      c.kind = ScanKind::Potential;
    } else if (k == "conductivity") {
      c.kind = ScanKind::Conductivity;
    } else if (k == "polarizability") {
      c.kind = ScanKind::Polarizability;
    } else {
      ctx.fail(root["kind"], "kind must be potential, conductivity or polarizability");
    }
  }
  if (root["stack"]) c.stack = ctx.text(root["stack"], "stack");
  if (root["model"]) c.model = ctx.text(root["model"], "model");
  if (root["n"]) c.n = ctx.integer(root["n"], "n");
  if (root["z0"]) c.z0 = ctx.number(root["z0"], "z0");
  if (root["temperature"]) c.temperature = ctx.number(root["temperature"], "temperature");
  if (root["fermi_energy_ev"]) c.fermi_energy_ev = ctx.number(root["fermi_energy_ev"], "fermi_energy_ev");
  if (root["spacing"]) c.spacing = ctx.number(root["spacing"], "spacing");
  if (root["omega"]) c.omega = ctx.number(root["omega"], "omega");
  if (root["q"]) c.q = ctx.number(root["q"], "q");
  if (root["gamma"]) c.gamma = ctx.number(root["gamma"], "gamma");
  if (root["tolerance"]) c.tolerance = ctx.number(root["tolerance"], "tolerance");
  if (root["basis_half_width"]) c.basis_half_width = ctx.integer(root["basis_half_width"], "basis_half_width");
  if (root["per_transition"]) c.per_transition = ctx.flag(root["per_transition"], "per_transition");
  if (root["plot"]) c.plot = ctx.flag(root["plot"], "plot");
  if (root["output"]) c.output = ctx.text(root["output"], "output");
  const auto axes = root["axes"];
  if (!axes || !axes.IsSequence()) ctx.fail(root, "field 'axes' must be a list of one or two axes");
  for (const auto& a : axes) c.axes.push_back(parse_axis(ctx, a));
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    ctx.fail(axes, e.what());
  }
  return c;
}

ScanConfig load_scan_file(const std::string& path) {
  auto c = parse_scan(read_file(path), path);
  c.stack_base_dir = fs::path(path).parent_path().string();
  return c;
}

}  // namespace rydcp::cli
