#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "rydcp/materials/graphene.hpp"

namespace rydcp::materials {

struct KuboGraphene {
  GrapheneParams params;
};

struct NonlocalGraphene {
  GrapheneParams params;
};

struct DrudeMetal {
  double plasma_frequency = 1.35e16;  // rad/s
  double damping = 17.13e12;          // rad/s
};

struct Dielectric {
  double eps_r = 1.0;
};

using MaterialModel = std::variant<KuboGraphene, NonlocalGraphene, DrudeMetal, Dielectric>;

/// 1 - wp^2 / (w^2 + i G w) for complex w (real axis or upper imaginary axis).
std::complex<double> drude_permittivity(std::complex<double> omega, double plasma_frequency, double damping);

/// Sheet models (graphene) carry a conductivity; bulk models a permittivity.
bool is_sheet(const MaterialModel& m);
/// Wavevector dependent (evaluated at q = k_parallel).
bool is_nonlocal(const MaterialModel& m);

/// Relative permittivity of a bulk model. Throws InvalidArgument for sheets.
std::complex<double> permittivity(const MaterialModel& m, std::complex<double> omega);

/// Sheet conductivity (S) at wavevector q; local models ignore q. `temperature`
/// is used when the sheet has no temperature of its own.
std::complex<double> sheet_conductivity(const MaterialModel& m, std::complex<double> omega, double q,
                                        double temperature);

void validate(const MaterialModel& m);

/// "graphene-kubo", "graphene-nonlocal", "gold-drude", "hbn", "vacuum".
MaterialModel material_preset(const std::string& name);
std::vector<std::string> material_preset_names();
std::string describe(const MaterialModel& m);

}  // namespace rydcp::materials
