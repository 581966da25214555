#pragma once

#include <complex>
#include <string_view>

#include "rydcp/materials/graphene.hpp"

namespace rydcp::materials {

/// Regions of the (x = q/k_F, y = hbar omega/E_F) quarter-plane separated by
/// the lines y = x, y = x - 2, y = 2 - x and y = x + 2.
enum class PlaneRegion { R1A, R2A, R3A, R1B, R2B, R3B };

std::string_view region_label(PlaneRegion r);
PlaneRegion classify_region(double x, double y);

/// Dimensionless T = 0 polarizability P / t1 with t1 = k_F / (pi hbar v_F),
/// for complex y with Im y >= 0 (real y is the retarded limit). One closed
/// form covers all regions; it is rearranged so that the small-x limit does
/// not cancel.
std::complex<double> lindhard_reduced(double x, std::complex<double> y);

/// Piecewise real-frequency formulas, one per region. With `as_printed_3a`
/// the widely reproduced 3A real part C(t4) - C(t6) is used instead of the
/// continuous C(t4) + C(t5).
std::complex<double> lindhard_region_formula(double x, double y, bool as_printed_3a = false);

/// Fermi wavenumber |E_F| / (hbar v_F) (1/m).
double fermi_wavenumber(const GrapheneParams& p);

/// P(q, omega) in 1/(J m^2). omega may be real (>= 0) or in the upper half plane.
/// Throws InvalidArgument for E_F = 0 or q <= 0.
std::complex<double> lindhard_polarizability(double q, std::complex<double> omega, const GrapheneParams& p);

/// Relaxation-time corrected (particle-conserving) polarizability
/// P_gamma = (1 + i g/w) P(q, w + i g) / (1 + (i g/w) P(q, w + i g) / P(q, 0)).
std::complex<double> rpa_rt_polarizability(double q, std::complex<double> omega, const GrapheneParams& p);

/// Longitudinal sheet conductivity i e^2 omega P_gamma / q^2 (S).
std::complex<double> nonlocal_conductivity(double q, std::complex<double> omega, const GrapheneParams& p);

/// eps_r - e^2 / (2 eps0 q) P_gamma, for diagnostics.
std::complex<double> rpa_rt_dielectric(double q, std::complex<double> omega, const GrapheneParams& p,
                                       double eps_r = 1.0);

}  // namespace rydcp::materials
