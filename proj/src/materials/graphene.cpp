#include "rydcp/materials/graphene.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "rydcp/constants.hpp"
#include "rydcp/error.hpp"
#include "rydcp/numeric/quadrature.hpp"

namespace rydcp::materials {

using constants::hbar;
using constants::k_B;
using constants::pi;
using constants::sigma0;

void GrapheneParams::validate() const {
  if (!(gamma > 0.0)) throw InvalidArgument("graphene relaxation rate must be positive");
  if (temperature && !(*temperature >= 0.0)) throw InvalidArgument("graphene temperature must be >= 0");
  if (!std::isfinite(fermi_energy_ev)) throw InvalidArgument("graphene Fermi energy must be finite");
}

double GrapheneParams::fermi_energy() const { return std::abs(fermi_energy_ev) * constants::eV; }

double GrapheneParams::temperature_or(double fallback) const { return temperature.value_or(fallback); }

double occupation_difference(double energy, double fermi_energy, double kT) {
  const double ef = std::abs(fermi_energy);
  const double ax = std::abs(energy);
  const double sign = energy < 0.0 ? -1.0 : 1.0;
  if (kT <= 0.0) {
    if (ax > ef) return sign;
    if (ax == ef && ax > 0.0) return 0.5 * sign;
    return 0.0;
  }
  const double a = ax / kT;
  const double b = ef / kT;
  const double m = std::max(a, b);
  const double num = std::exp(a - m) - std::exp(-a - m);
  const double den = std::exp(b - m) + std::exp(-b - m) + std::exp(a - m) + std::exp(-a - m);
  return sign * num / den;
}

namespace {

void check_frequency(std::complex<double> omega) {
  const bool real_axis = omega.imag() == 0.0 && omega.real() > 0.0;
  const bool imag_axis = omega.real() == 0.0 && omega.imag() >= 0.0;
  if (!real_axis && !imag_axis) {
    throw InvalidArgument("Kubo conductivity needs real omega > 0 or omega = i xi with xi >= 0");
  }
}

double carrier_term(double ef, double kT) {
  // E_F + 2 kT ln(1 + exp(-E_F/kT))
  if (kT <= 0.0) return ef;
  return ef + 2.0 * kT * std::log1p(std::exp(-ef / kT));
}

}  // namespace

std::complex<double> kubo_intraband(std::complex<double> omega, const GrapheneParams& p, double temperature) {
  p.validate();
  check_frequency(omega);
  const double kT = k_B * p.temperature_or(temperature);
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> den = hbar * (p.gamma - i * omega);
  return 4.0 * sigma0 / pi * carrier_term(p.fermi_energy(), kT) / den;
}

std::complex<double> kubo_interband(std::complex<double> omega, const GrapheneParams& p, double temperature) {
  p.validate();
  check_frequency(omega);
  const double kT = k_B * p.temperature_or(temperature);
  const double ef = p.fermi_energy();
  numeric::QuadOptions opt;
  opt.rel_tol = 0.0;
  opt.abs_tol = 1e-8;

  if (omega.imag() != 0.0 || omega.real() == 0.0) {
    const double xi = omega.imag();
    if (xi == 0.0) return 0.0;
    const double half = 0.5 * hbar * xi;
    // (2/pi) int_0^{pi/2} G(half tan t) dt with a break where the argument crosses E_F
    auto f = [&](double t) { return occupation_difference(half * std::tan(t), ef, kT); };
    std::vector<double> br{0.0};
    const double tf = std::atan(ef / half);
    if (tf > 0.0 && tf < 0.5 * pi) br.push_back(tf);
    br.push_back(0.5 * pi);
    const auto r = numeric::integrate<double>(f, std::span<const double>(br), opt, "kubo.interband.imag");
    return sigma0 * 2.0 / pi * r.value;
  }

  const double w = hbar * omega.real();
  const double g_half = occupation_difference(0.5 * w, ef, kT);
  // E = w u: (4/pi) int_0^inf (G(w u) - G(w/2)) / (1 - 4u^2) du; u = 1/2 is removable
  auto f = [&](double u) {
    const double d = 1.0 - 4.0 * u * u;
    return (occupation_difference(w * u, ef, kT) - g_half) / d;
  };
  const double u_hi = std::max(1.0, (ef + 40.0 * kT) / w);
  std::vector<double> br{0.0, 0.5};
  const double uf = ef / w;
  if (uf > 0.0 && uf < u_hi && std::abs(uf - 0.5) > 1e-12) br.push_back(uf);
  std::sort(br.begin(), br.end());
  br.push_back(u_hi);
  const auto body = numeric::integrate<double>(f, std::span<const double>(br), opt, "kubo.interband.real");
  // tail: u = u_hi / t
  auto tail_f = [&](double t) { return f(u_hi / t) * u_hi / (t * t); };
  const auto tail = numeric::integrate<double>(tail_f, 0.0, 1.0, opt, "kubo.interband.tail");
  const std::complex<double> i(0.0, 1.0);
  return sigma0 * (g_half + i * (4.0 / pi) * (body.value + tail.value));
}

std::complex<double> kubo_conductivity(std::complex<double> omega, const GrapheneParams& p,
                                       double temperature) {
  return kubo_intraband(omega, p, temperature) + kubo_interband(omega, p, temperature);
}

}  // namespace rydcp::materials
