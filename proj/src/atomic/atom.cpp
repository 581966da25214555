#include "rydcp/atomic/atom.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "rydcp/constants.hpp"
#include "rydcp/error.hpp"
#include "rydcp/numeric/wigner.hpp"

namespace rydcp::atomic {

namespace {

int parity_sign(int twice_exponent) {
  // (-1)^(x) for x = twice_exponent / 2, which must be an integer
  return ((twice_exponent / 2) % 2 == 0) ? 1 : -1;
}

// <l_u j_u || r || l_k j_k> / R in units of the radial integral.
double reduced_angular(const AtomicState& u, const AtomicState& k) {
  const int s2 = 1;
  const double lfac = parity_sign(2 * u.l) * std::sqrt((2.0 * u.l + 1.0) * (2.0 * k.l + 1.0)) *
                      numeric::wigner_3j(2 * u.l, 2, 2 * k.l, 0, 0, 0);
  if (lfac == 0.0) return 0.0;
  const double jfac = parity_sign(2 * u.l + s2 + k.two_j + 2) *
                      std::sqrt((u.two_j + 1.0) * (k.two_j + 1.0)) *
                      numeric::wigner_6j(2 * u.l, u.two_j, s2, k.two_j, 2 * k.l, 2);
  return lfac * jfac;
}

// <u| r_q |k> / R for q = -1, 0, +1 (index q + 1).
std::array<double, 3> spherical_components(const AtomicState& u, const AtomicState& k) {
  std::array<double, 3> out{0.0, 0.0, 0.0};
  if (std::abs(u.l - k.l) != 1 || std::abs(u.two_j - k.two_j) > 2) return out;
  const double reduced = reduced_angular(u, k);
  if (reduced == 0.0) return out;
  for (int q = -1; q <= 1; ++q) {
    if (u.two_m != k.two_m + 2 * q) continue;
    out[static_cast<std::size_t>(q + 1)] = parity_sign(u.two_j - u.two_m) *
                                           numeric::wigner_3j(u.two_j, 2, k.two_j, -u.two_m, 2 * q, k.two_m) *
                                           reduced;
  }
  return out;
}

Vector3c to_cartesian(const std::array<double, 3>& sph) {
  const double s = 1.0 / std::sqrt(2.0);
  const std::complex<double> i(0.0, 1.0);
  return Vector3c(s * (sph[0] - sph[2]), i * s * (sph[0] + sph[2]), sph[1]);
}

}  // namespace

Atom::Atom(AtomData data, GridSpec grid) : data_(std::move(data)), grid_(grid) {}

double Atom::quantum_defect(int l, int two_j, int n) const {
  return data_.defects.defect(l, two_j, n);
}

double Atom::effective_n(const AtomicState& s) const {
  return s.n - quantum_defect(s.l, s.two_j, s.n);
}

double Atom::rydberg_energy() const {
  return constants::rydberg_infinity * data_.reduced_mass_ratio();
}

double Atom::binding_energy(const AtomicState& s) const {
  s.validate();
  const double ns = effective_n(s);
  if (!(ns > 0.0)) {
    throw InvalidArgument("binding energy undefined for " + s.label() + ": n* = " + std::to_string(ns));
  }
  return -rydberg_energy() / (ns * ns);
}

double Atom::transition_frequency(const AtomicState& u, const AtomicState& k) const {
  if (u.n == k.n && u.l == k.l && u.two_j == k.two_j) return 0.0;
  return (binding_energy(k) - binding_energy(u)) / constants::hbar;
}

std::shared_ptr<const RadialWavefunction> Atom::wavefunction(const AtomicState& s) const {
  const AtomicState key = s.level();
  {
    std::shared_lock lock(mutex_);
    const auto it = wavefunctions_.find(key);
    if (it != wavefunctions_.end()) return it->second;
  }
  const double energy = binding_energy(key) / constants::hartree;
  const auto& core = data_.core;
  auto wf = std::make_shared<const RadialWavefunction>(solve_radial(
      key, energy, data_.reduced_mass_ratio(),
      [&core, &key](double r) { return core(key.l, key.two_j, r); }, grid_));
  std::unique_lock lock(mutex_);
  return wavefunctions_.emplace(key, std::move(wf)).first->second;
}

double Atom::radial_matrix_element(const AtomicState& a, const AtomicState& b) const {
  const auto ka = a.level();
  const auto kb = b.level();
  const auto key = ka < kb ? std::make_pair(ka, kb) : std::make_pair(kb, ka);
  {
    std::shared_lock lock(mutex_);
    const auto it = radials_.find(key);
    if (it != radials_.end()) return it->second;
  }
  const double value = radial_integral(*wavefunction(key.first), *wavefunction(key.second), 1);
  std::unique_lock lock(mutex_);
  radials_.emplace(key, value);
  return value;
}

DipoleElement Atom::dipole_element(const AtomicState& u, const AtomicState& k) const {
  u.validate();
  k.validate();
  DipoleElement d{u, k, Vector3c::Zero()};
  const auto sph = spherical_components(u, k);
  if (sph[0] == 0.0 && sph[1] == 0.0 && sph[2] == 0.0) return d;
  const double radial = radial_matrix_element(u, k);
  d.cartesian = to_cartesian(sph) * (-constants::e * constants::bohr_radius * radial);
  return d;
}

std::vector<Transition> Atom::transitions(const AtomicState& u, const BasisWindow& basis) const {
  u.validate();
  if (basis.half_width < 0) throw InvalidArgument("basis window half width must be non-negative");
  std::vector<Transition> out;
  for (int n = std::max(1, u.n - basis.half_width); n <= u.n + basis.half_width; ++n) {
    for (int l : {u.l - 1, u.l + 1}) {
      if (l < 0 || l >= n || n < data_.lowest_allowed_n(l)) continue;
      for (int two_j : {2 * l - 1, 2 * l + 1}) {
        if (two_j < 1 || std::abs(two_j - u.two_j) > 2) continue;
        AtomicState level{n, l, two_j, 1};
        if (!(effective_n(level) > 0.0)) continue;
        Transition t;
        t.level = level;
        t.omega = transition_frequency(u, level);
        bool any = false;
        for (int two_m = -two_j; two_m <= two_j; two_m += 2) {
          const AtomicState k{n, l, two_j, two_m};
          const auto sph = spherical_components(u, k);
          if (sph[0] == 0.0 && sph[1] == 0.0 && sph[2] == 0.0) continue;
          any = true;
          const Vector3c d = to_cartesian(sph);
          t.strength += d * d.adjoint();
        }
        if (!any) continue;
        t.radial = radial_matrix_element(u, level);
        const double scale = constants::e * constants::bohr_radius * t.radial;
        t.strength *= scale * scale;
        out.push_back(t);
      }
    }
  }
  return out;
}

Matrix3c Atom::polarizability(const std::vector<Transition>& transitions, std::complex<double> omega,
                              double damping_fraction) {
  const bool real_axis = omega.imag() == 0.0;
  const std::complex<double> i(0.0, 1.0);
  const double eps = real_axis ? damping_fraction * std::abs(omega) : 0.0;
  Matrix3c alpha = Matrix3c::Zero();
  for (const auto& t : transitions) {
    const std::complex<double> d1 = t.omega - omega - i * eps;
    const std::complex<double> d2 = t.omega + omega + i * eps;
    if (d1 == 0.0 || d2 == 0.0) {
      throw InvalidArgument("polarizability evaluated exactly at the " + t.level.label() +
                            " transition pole without damping");
    }
    alpha += t.strength / d1 + Matrix3c(t.strength.transpose()) / d2;
  }
  return alpha / constants::hbar;
}

Matrix3c Atom::polarizability(const AtomicState& u, std::complex<double> omega, const BasisWindow& basis,
                              double damping_fraction) const {
  return polarizability(transitions(u, basis), omega, damping_fraction);
}

PolarizabilityCheck Atom::polarizability_convergence(const AtomicState& u, std::complex<double> omega,
                                                     const BasisWindow& basis) const {
  PolarizabilityCheck c;
  c.value = polarizability(u, omega, basis);
  c.doubled = polarizability(u, omega, basis.doubled());
  const double ref = c.doubled.norm();
  c.relative_change = ref > 0.0 ? (c.doubled - c.value).norm() / ref : 0.0;
  return c;
}

double thermal_photon_number(double omega, double temperature) {
  if (temperature < 0.0) throw InvalidArgument("temperature must be non-negative");
  if (temperature == 0.0) return 0.0;
  const double x = constants::hbar * omega / (constants::k_B * temperature);
  return 1.0 / std::expm1(x);
}

}  // namespace rydcp::atomic
