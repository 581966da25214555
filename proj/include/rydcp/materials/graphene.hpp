#pragma once

#include <complex>
#include <optional>

namespace rydcp::materials {

/// Graphene sheet parameters. A negative Fermi energy (hole doping) acts as
/// |E_F|. An unset temperature follows the environment of the calculation.
struct GrapheneParams {
  double fermi_energy_ev = 0.1;
  double gamma = 4e12;  // relaxation rate (rad/s)
  std::optional<double> temperature;

  void validate() const;
  /// |E_F| in joules.
  double fermi_energy() const;
  /// Sheet temperature, `fallback` when unset.
  double temperature_or(double fallback) const;
};

/// sinh(X/kT) / (cosh(E_F/kT) + cosh(X/kT)) evaluated without overflow;
/// the T = 0 limit is sign(X) for |X| > E_F and 0 below.
double occupation_difference(double energy, double fermi_energy, double kT);

/// Intraband Kubo term at complex frequency (real axis or upper imaginary axis).
std::complex<double> kubo_intraband(std::complex<double> omega, const GrapheneParams& p, double temperature);

/// Interband Kubo term. Real omega uses the principal-value integral; purely
/// imaginary omega = i xi uses its analytic continuation.
std::complex<double> kubo_interband(std::complex<double> omega, const GrapheneParams& p, double temperature);

/// Local sheet conductivity (S). omega must be real positive or i xi, xi >= 0.
std::complex<double> kubo_conductivity(std::complex<double> omega, const GrapheneParams& p,
                                       double temperature);

}  // namespace rydcp::materials
