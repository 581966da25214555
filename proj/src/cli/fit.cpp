#include "rydcp/cli/fit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "rydcp/analysis/fits.hpp"
#include "rydcp/analysis/oscillation.hpp"
#include "rydcp/atomic/atom.hpp"
#include "rydcp/constants.hpp"
#include "rydcp/error.hpp"

namespace rydcp::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kInputs{"n", "z0_m", "T_K", "ef_top_eV", "ef_bottom_eV", "d_m", "model"};

struct Group {
  std::map<std::string, std::string> key;
  std::vector<const std::vector<std::string>*> rows;
};

std::vector<Group> group_rows(const Table& t, const std::set<std::string>& consumed) {
  std::vector<std::string> keys;
  for (const auto& c : kInputs) {
    if (!consumed.count(c) && t.has_column(c)) keys.push_back(c);
  }
  const std::size_t err = t.has_column("error") ? t.column("error") : t.header.size();
  std::map<std::vector<std::string>, Group> groups;
  std::vector<std::vector<std::string>> order;
  for (const auto& r : t.rows) {
    if (err < r.size() && !r[err].empty()) continue;
    std::vector<std::string> k;
    for (const auto& c : keys) k.push_back(r[t.column(c)]);
    auto [it, fresh] = groups.try_emplace(k);
    if (fresh) {
      order.push_back(k);
      for (std::size_t i = 0; i < keys.size(); ++i) it->second.key[keys[i]] = k[i];
    }
    it->second.rows.push_back(&r);
  }
  std::vector<Group> out;
  for (const auto& k : order) out.push_back(std::move(groups[k]));
  return out;
}

double number(const Table& t, const std::vector<std::string>& row, const std::string& col) {
  const auto& s = row[t.column(col)];
  if (s.empty()) throw InvalidArgument("column '" + col + "' is empty");
  return std::stod(s);
}

json key_json(const Group& g) {
  json k = json::object();
  for (const auto& [name, value] : g.key) {
    if (value.empty()) continue;
    if (name == "model") k[name] = value;
    else k[name] = std::stod(value);
  }
  return k;
}

void require(const Table& t, const std::string& col) {
  if (!t.has_column(col)) throw InvalidArgument("table has no '" + col + "' column");
}

json power_law(const Table& t, const std::string& y) {
  json out = json::array();
  for (const auto& g : group_rows(t, {"z0_m"})) {
    std::vector<double> z, u;
    for (const auto* r : g.rows) {
      z.push_back(number(t, *r, "z0_m"));
      u.push_back(number(t, *r, y));
    }
    json e{{"group", key_json(g)}};
    try {
      const auto f = analysis::fit_power_law(z, u);
      e["coefficient"] = f.coefficient;
      e["exponent"] = f.exponent;
      e["residual"] = f.residual;
      e["z_min_m"] = f.z_min;
      e["z_max_m"] = f.z_max;
    } catch (const std::exception& ex) {
      e["error"] = ex.what();
    }
    out.push_back(e);
  }
  return out;
}

json c3_fit(const Table& t, const std::string& y, analysis::C3Form form) {
  json out = json::array();
  for (const auto& g : group_rows(t, {"n"})) {
    std::vector<double> n, c3;
    for (const auto* r : g.rows) {
      const double z = number(t, *r, "z0_m");
      n.push_back(number(t, *r, "n"));
      c3.push_back(-number(t, *r, y) * z * z * z);
    }
    json e{{"group", key_json(g)}};
    try {
      const auto f = analysis::fit_c3_vs_n(n, c3, form);
      if (form == analysis::C3Form::TwoTerm) {
        e["q1"] = f.q1;
        e["q2"] = f.q2;
      } else {
        e["amplitude"] = f.amplitude;
        e["exponent"] = f.exponent;
      }
      e["residual"] = f.residual;
    } catch (const std::exception& ex) {
      e["error"] = ex.what();
    }
    out.push_back(e);
  }
  return out;
}

json terms_json(const std::vector<analysis::EmpiricalModel::Term>& terms) {
  json a = json::array();
  for (const auto& t : terms) a.push_back({{"power", t.power}, {"coefficient", t.coefficient}});
  return a;
}

json empirical(const Table& t, const std::string& y) {
  std::vector<analysis::C3Sample> samples;
  std::vector<std::pair<const std::vector<std::string>*, double>> rows;
  for (const auto& g : group_rows(t, {"n", "T_K", "z0_m"})) {
    for (const auto* r : g.rows) {
      const double z = number(t, *r, "z0_m");
      samples.push_back({number(t, *r, "n"), number(t, *r, "T_K"), -number(t, *r, y) * z * z * z});
      rows.emplace_back(r, z);
    }
  }
  json out;
  const auto fitted = analysis::fit_empirical_model(samples, analysis::P1Basis::Sparse);
  out["fitted"] = {{"p1", terms_json(fitted.p1_terms)}, {"p2", terms_json(fitted.p2_terms)}};
  const auto reference = analysis::EmpiricalModel::graphene_reference();
  json audit = json::array();
  double worst_ref = 0.0, worst_fit = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    const double z = rows[i].second;
    const double u = number(t, *rows[i].first, y);
    const auto ref = analysis::empirical_potential(reference, s.n, s.temperature, z);
    const auto fit = analysis::empirical_potential(fitted, s.n, s.temperature, z);
    const double dr = std::abs(ref.value - u) / std::abs(u);
    const double df = std::abs(fit.value - u) / std::abs(u);
    if (!ref.extrapolated) worst_ref = std::max(worst_ref, dr);
    worst_fit = std::max(worst_fit, df);
    audit.push_back({{"n", s.n},
                     {"T_K", s.temperature},
                     {"z0_m", z},
                     {"u_Hz", u},
                     {"reference_Hz", ref.value},
                     {"reference_rel_dev", dr},
                     {"reference_extrapolated", ref.extrapolated},
                     {"fitted_Hz", fit.value},
                     {"fitted_rel_dev", df}});
  }
  out["audit"] = audit;
  out["reference_max_rel_dev"] = worst_ref;
  out["fitted_max_rel_dev"] = worst_fit;
  return out;
}

json oscillation(const Table& t, const std::string& y, std::optional<double> lambda_start) {
  json out = json::array();
  std::optional<atomic::Atom> atom;
  for (const auto& g : group_rows(t, {"z0_m"})) {
    std::vector<std::pair<double, double>> pts;
    for (const auto* r : g.rows) pts.emplace_back(number(t, *r, "z0_m"), number(t, *r, y));
    std::sort(pts.begin(), pts.end());
    std::vector<double> z, u;
    for (const auto& [a, b] : pts) {
      z.push_back(a);
      u.push_back(b);
    }
    json e{{"group", key_json(g)}};
    try {
      double start = 0.0;
      if (lambda_start) {
        start = *lambda_start;
      } else {
        const auto it = g.key.find("n");
        if (it == g.key.end()) throw InvalidArgument("oscillation fit needs an n column or --lambda-start");
        if (!atom) atom.emplace();
        const int n = std::stoi(it->second);
        const double w = std::abs(atom->transition_frequency(atomic::s_state(n), {n - 1, 1, 1, 1}));
        start = 2.0 * constants::pi * constants::c / w;
      }
      const auto r = analysis::extract_oscillation_wavelength(z, u, start);
      e["lambda_start_m"] = start;
      e["wavelength_m"] = r.wavelength;
      e["cycle_start_m"] = r.cycle_start;
      e["first_zero_crossing_m"] = r.first_zero_crossing;
      e["crossings_m"] = r.crossings;
    } catch (const std::exception& ex) {
      e["error"] = ex.what();
    }
    out.push_back(e);
  }
  return out;
}

json linear_t(const Table& t, const std::string& y) {
  json out = json::array();
  for (const auto& g : group_rows(t, {"T_K"})) {
    std::vector<double> x, u;
    for (const auto* r : g.rows) {
      x.push_back(number(t, *r, "T_K"));
      u.push_back(number(t, *r, y));
    }
    json e{{"group", key_json(g)}};
    try {
      const auto f = analysis::fit_line(x, u);
      e["slope_per_K"] = f.slope;
      e["intercept"] = f.intercept;
      e["r_squared"] = f.r_squared;
    } catch (const std::exception& ex) {
      e["error"] = ex.what();
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace

FitKind parse_fit_kind(const std::string& name) {
  if (name == "power-law") return FitKind::PowerLaw;
  if (name == "c3-two-term") return FitKind::C3TwoTerm;
  if (name == "c3-single") return FitKind::C3Single;
  if (name == "empirical") return FitKind::Empirical;
  if (name == "oscillation") return FitKind::Oscillation;
  if (name == "linear-T") return FitKind::LinearT;
  throw InvalidArgument("unknown fit '" + name +
                        "' (power-law, c3-two-term, c3-single, empirical, oscillation, linear-T)");
}

std::string fit_kind_name(FitKind kind) {
  switch (kind) {
    case FitKind::PowerLaw: return "power-law";
    case FitKind::C3TwoTerm: return "c3-two-term";
    case FitKind::C3Single: return "c3-single";
    case FitKind::Empirical: return "empirical";
    case FitKind::Oscillation: return "oscillation";
    case FitKind::LinearT: return "linear-T";
  }
  return "";
}

nlohmann::json run_fit(const Table& table, const FitRequest& request) {
  require(table, request.column);
  json out{{"fit", fit_kind_name(request.kind)}, {"column", request.column}};
  switch (request.kind) {
    case FitKind::PowerLaw:
      require(table, "z0_m");
      out["results"] = power_law(table, request.column);
      break;
    case FitKind::C3TwoTerm:
    case FitKind::C3Single:
      require(table, "n");
      require(table, "z0_m");
      out["results"] = c3_fit(table, request.column,
                              request.kind == FitKind::C3TwoTerm ? analysis::C3Form::TwoTerm
                                                                 : analysis::C3Form::SinglePower);
      break;
    case FitKind::Empirical:
      for (const char* c : {"n", "T_K", "z0_m"}) require(table, c);
      out["results"] = empirical(table, request.column);
      break;
    case FitKind::Oscillation:
      require(table, "z0_m");
      out["results"] = oscillation(table, request.column, request.lambda_start);
      break;
    case FitKind::LinearT:
      require(table, "T_K");
      out["results"] = linear_t(table, request.column);
      break;
  }
  return out;
}

}  // namespace rydcp::cli
