#pragma once

#include <numbers>

// CODATA 2018 values, SI units.
namespace rydcp::constants {

inline constexpr double pi = std::numbers::pi;

inline constexpr double c = 299792458.0;
inline constexpr double h = 6.62607015e-34;
inline constexpr double hbar = h / (2.0 * pi);
inline constexpr double e = 1.602176634e-19;
inline constexpr double k_B = 1.380649e-23;
inline constexpr double epsilon0 = 8.8541878128e-12;
inline constexpr double mu0 = 1.25663706212e-6;
inline constexpr double m_e = 9.1093837015e-31;
inline constexpr double amu = 1.66053906660e-27;
inline constexpr double fine_structure = 7.2973525693e-3;

inline constexpr double bohr_radius = 5.29177210903e-11;
inline constexpr double hartree = 4.3597447222071e-18;
inline constexpr double rydberg_infinity = hartree / 2.0;

inline constexpr double eV = e;

// 87Rb
inline constexpr double rb87_mass = 86.909180527 * amu;
inline constexpr double rb87_reduced_mass_ratio = rb87_mass / (rb87_mass + m_e);

// Graphene
inline constexpr double graphene_fermi_velocity = 1.0e6;
inline constexpr double sigma0 = e * e / (4.0 * hbar);

}  // namespace rydcp::constants
