#include "rydcp/cp/regime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rydcp/constants.hpp"
#include "rydcp/error.hpp"

namespace rydcp::cp {

using constants::c;
using constants::hbar;
using constants::k_B;

std::string RegimeReport::flags() const {
  std::string out;
  auto add = [&out](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += '|';
    out += name;
  };
  add(retarded, "retarded");
  add(non_retarded, "non-retarded");
  add(spectroscopic_low_t, "spectroscopic-low-T");
  add(spectroscopic_high_t, "spectroscopic-high-T");
  add(geometric_low_t, "geometric-low-T");
  add(geometric_high_t, "geometric-high-T");
  add(intermediate, "intermediate");
  return out;
}

RegimeReport regime_report(const atomic::Atom& atom, const atomic::AtomicState& u, double z0, double temperature,
                           double margin) {
  u.validate();
  if (!(z0 > 0.0)) throw InvalidArgument("atom-surface distance must be positive");
  if (!(temperature >= 0.0)) throw InvalidArgument("temperature must be >= 0");
  if (!(margin >= 1.0)) throw InvalidArgument("regime margin must be >= 1");

  std::vector<double> omegas;
  if (u.l == 0) {
    for (int n : {u.n - 1, u.n}) {
      for (int two_j : {1, 3}) {
        const atomic::AtomicState k{n, 1, two_j, 1};
        if (!k.is_valid() || n < atom.data().lowest_allowed_n(1)) continue;
        omegas.push_back(std::abs(atom.transition_frequency(u, k)));
      }
    }
  } else {
    for (const auto& t : atom.transitions(u, atomic::BasisWindow{2})) omegas.push_back(std::abs(t.omega));
    std::sort(omegas.begin(), omegas.end());
    if (omegas.size() > 2) omegas.resize(2);
  }
  if (omegas.empty()) throw InvalidArgument("no dominant transition for " + u.label());

  RegimeReport r;
  r.margin = margin;
  r.omega_minus = *std::min_element(omegas.begin(), omegas.end());
  r.omega_plus = *std::max_element(omegas.begin(), omegas.end());
  r.z_omega = c / r.omega_plus;
  r.z_omega_minus = c / r.omega_minus;
  r.z_T = temperature > 0.0 ? hbar * c / (k_B * temperature) : std::numeric_limits<double>::infinity();
  r.T_z = hbar * c / (z0 * k_B);
  r.T_omega = hbar * r.omega_plus / k_B;
  r.T_omega_minus = hbar * r.omega_minus / k_B;

  auto much_less = [margin](double a, double b) { return margin * a < b; };
  r.retarded = much_less(c / r.omega_minus, z0);
  r.non_retarded = much_less(z0, c / r.omega_plus);
  r.spectroscopic_low_t = much_less(temperature, r.T_omega_minus);
  r.spectroscopic_high_t = much_less(r.T_omega, temperature);
  r.geometric_low_t = much_less(temperature, r.T_z);
  r.geometric_high_t = much_less(r.T_z, temperature);
  r.intermediate = !(r.retarded || r.non_retarded) || !(r.spectroscopic_low_t || r.spectroscopic_high_t) ||
                   !(r.geometric_low_t || r.geometric_high_t);
  return r;
}

}  // namespace rydcp::cp
