#include "rydcp/atomic/atom_data.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "rydcp/atomic/state.hpp"
#include "rydcp/constants.hpp"
#include "rydcp/error.hpp"

namespace rydcp::atomic {

DefectSeries QuantumDefectTable::series(int l, int two_j) const {
  const auto it = table_.find({l, two_j});
  return it == table_.end() ? DefectSeries{} : it->second;
}

double QuantumDefectTable::defect(int l, int two_j, int n) const {
  const auto s = series(l, two_j);
  if (s.delta0 == 0.0 && s.delta2 == 0.0) return 0.0;
  const double d = n - s.delta2;
  return s.delta0 + s.delta2 / (d * d);
}

double CorePotential::operator()(int l, int two_j, double r) const {
  const auto i = static_cast<std::size_t>(std::min(l, 3));
  const double z_eff = 1.0 + (nuclear_charge - 1) * std::exp(-a1[i] * r) -
                       r * (a3[i] + a4[i] * r) * std::exp(-a2[i] * r);
  const double r4 = r * r * r * r;
  const double x6 = std::pow(r / rc[i], 6);
  double v = -z_eff / r - alpha_core / (2.0 * r4) * (1.0 - std::exp(-x6));
  if (spin_orbit && l > 0) {
    const double j = 0.5 * two_j;
    const double ls = 0.5 * (j * (j + 1.0) - l * (l + 1.0) - 0.75);
    const double a = constants::fine_structure;
    v += a * a / (2.0 * r * r * r) * ls;
  }
  return v;
}

double AtomData::reduced_mass_ratio() const {
  const double m = mass_amu * constants::amu;
  return m / (m + constants::m_e);
}

int AtomData::lowest_allowed_n(int l) const {
  if (l < static_cast<int>(lowest_n.size())) return lowest_n[static_cast<std::size_t>(l)];
  return l + 1;
}

AtomData rb87_defaults() {
  AtomData d;
  d.defects.set(0, 1, {3.1311804, 0.1784});
  d.defects.set(1, 1, {2.6548849, 0.2900});
  d.defects.set(1, 3, {2.6416737, 0.2950});
  d.defects.set(2, 3, {1.34809171, -0.60286});
  d.defects.set(2, 5, {1.34646572, -0.59600});
  auto& c = d.core;
  c.nuclear_charge = 37;
  c.alpha_core = 9.0760;
  c.a1 = {3.69628474, 4.44088978, 3.78717363, 2.39848933};
  c.a2 = {1.64915255, 1.92828831, 1.57027864, 1.76810544};
  c.a3 = {-9.86069196, -16.79597770, -11.65588970, -12.07106780};
  c.a4 = {0.19579987, -0.8163314, 0.52942835, 0.77256589};
  c.rc = {1.66242117, 1.50195124, 4.86851938, 4.79831327};
  return d;
}

namespace {

std::vector<double> numbers(const std::string& value, const std::string& key, int line) {
  std::istringstream in(value);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
      throw InvalidArgument("atom data line " + std::to_string(line) + ": '" + key +
                            "' has non-numeric value '" + tok + "'");
    }
    out.push_back(v);
  }
  return out;
}

template <std::size_t N>
std::array<double, N> fixed(const std::vector<double>& v, const std::string& key, int line) {
  if (v.size() != N) {
    throw InvalidArgument("atom data line " + std::to_string(line) + ": '" + key + "' expects " +
                          std::to_string(N) + " values");
  }
  std::array<double, N> a{};
  for (std::size_t i = 0; i < N; ++i) a[i] = v[i];
  return a;
}

}  // namespace

AtomData load_atom_data(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open atom data file " + path.string());
  AtomData d;
  d.defects = QuantumDefectTable{};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const auto eq = raw.find('=');
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos) {
      throw InvalidArgument("atom data line " + std::to_string(line) + ": expected 'key = value'");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(raw.substr(0, eq));
    const std::string value = trim(raw.substr(eq + 1));
    if (key == "version") {
      d.version = static_cast<int>(numbers(value, key, line).at(0));
      if (d.version != 1) throw InvalidArgument("unsupported atom data version " + value);
    } else if (key == "species") {
      d.species = value;
    } else if (key == "mass_amu") {
      d.mass_amu = numbers(value, key, line).at(0);
    } else if (key.rfind("defect.", 0) == 0) {
      const auto st = parse_state("99" + key.substr(7));
      const auto v = fixed<2>(numbers(value, key, line), key, line);
      d.defects.set(st.l, st.two_j, {v[0], v[1]});
    } else if (key == "lowest_n") {
      const auto v = fixed<4>(numbers(value, key, line), key, line);
      for (std::size_t i = 0; i < 4; ++i) d.lowest_n[i] = static_cast<int>(v[i]);
    } else if (key == "core.Z") {
      d.core.nuclear_charge = static_cast<int>(numbers(value, key, line).at(0));
    } else if (key == "core.alpha_c") {
      d.core.alpha_core = numbers(value, key, line).at(0);
    } else if (key == "core.a1") {
      d.core.a1 = fixed<4>(numbers(value, key, line), key, line);
    } else if (key == "core.a2") {
      d.core.a2 = fixed<4>(numbers(value, key, line), key, line);
    } else if (key == "core.a3") {
      d.core.a3 = fixed<4>(numbers(value, key, line), key, line);
    } else if (key == "core.a4") {
      d.core.a4 = fixed<4>(numbers(value, key, line), key, line);
    } else if (key == "core.rc") {
      d.core.rc = fixed<4>(numbers(value, key, line), key, line);
    } else if (key == "core.spin_orbit") {
      d.core.spin_orbit = numbers(value, key, line).at(0) != 0.0;
    } else {
      throw InvalidArgument("atom data line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  return d;
}

std::filesystem::path data_directory(const std::filesystem::path& fallback) {
  if (const char* env = std::getenv("RYDCP_DATA_DIR"); env != nullptr && *env != '\0') {
    return std::filesystem::path(env);
  }
  return fallback;
}

}  // namespace rydcp::atomic
