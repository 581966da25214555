#include "rydcp/materials/material.hpp"

#include <cmath>
#include <sstream>

#include "rydcp/error.hpp"
#include "rydcp/materials/lindhard.hpp"

namespace rydcp::materials {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

std::complex<double> drude_permittivity(std::complex<double> omega, double plasma_frequency, double damping) {
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> den = omega * omega + i * damping * omega;
  if (den == 0.0) throw InvalidArgument("Drude permittivity diverges at omega = 0");
  return 1.0 - plasma_frequency * plasma_frequency / den;
}

bool is_sheet(const MaterialModel& m) {
  return std::holds_alternative<KuboGraphene>(m) || std::holds_alternative<NonlocalGraphene>(m);
}

bool is_nonlocal(const MaterialModel& m) { return std::holds_alternative<NonlocalGraphene>(m); }

std::complex<double> permittivity(const MaterialModel& m, std::complex<double> omega) {
  return std::visit(
      overloaded{
          [&](const DrudeMetal& d) { return drude_permittivity(omega, d.plasma_frequency, d.damping); },
          [](const Dielectric& d) { return std::complex<double>(d.eps_r, 0.0); },
          [](const auto&) -> std::complex<double> {
            throw InvalidArgument("a graphene sheet has no bulk permittivity");
          },
      },
      m);
}

std::complex<double> sheet_conductivity(const MaterialModel& m, std::complex<double> omega, double q,
                                        double temperature) {
  return std::visit(
      overloaded{
          [&](const KuboGraphene& g) { return kubo_conductivity(omega, g.params, temperature); },
          [&](const NonlocalGraphene& g) { return nonlocal_conductivity(q, omega, g.params); },
          [](const auto&) -> std::complex<double> {
            throw InvalidArgument("bulk materials have no sheet conductivity");
          },
      },
      m);
}

void validate(const MaterialModel& m) {
  std::visit(overloaded{
                 [](const KuboGraphene& g) { g.params.validate(); },
                 [](const NonlocalGraphene& g) {
                   g.params.validate();
                   if (g.params.fermi_energy() == 0.0) {
                     throw InvalidArgument("the non-local graphene model needs E_F != 0");
                   }
                 },
                 [](const DrudeMetal& d) {
                   if (!(d.plasma_frequency > 0.0) || !(d.damping >= 0.0)) {
                     throw InvalidArgument("Drude metal needs plasma frequency > 0 and damping >= 0");
                   }
                 },
                 [](const Dielectric& d) {
                   if (!(d.eps_r >= 1.0)) throw InvalidArgument("dielectric constant must be >= 1");
                 },
             },
             m);
}

MaterialModel material_preset(const std::string& name) {
  if (name == "graphene-kubo") return KuboGraphene{};
  if (name == "graphene-nonlocal") return NonlocalGraphene{};
  if (name == "gold-drude") return DrudeMetal{};
  if (name == "hbn") return Dielectric{3.58};
  if (name == "vacuum") return Dielectric{1.0};
  throw InvalidArgument("unknown material preset '" + name + "'");
}

std::vector<std::string> material_preset_names() {
  return {"graphene-kubo", "graphene-nonlocal", "gold-drude", "hbn", "vacuum"};
}

std::string describe(const MaterialModel& m) {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const KuboGraphene& g) {
                   out << "graphene (Kubo) E_F=" << g.params.fermi_energy_ev << " eV gamma=" << g.params.gamma
                       << " rad/s";
                 },
                 [&](const NonlocalGraphene& g) {
                   out << "graphene (non-local RPA-RT) E_F=" << g.params.fermi_energy_ev
                       << " eV gamma=" << g.params.gamma << " rad/s";
                 },
                 [&](const DrudeMetal& d) {
                   out << "Drude metal wp=" << d.plasma_frequency << " rad/s Gamma=" << d.damping << " rad/s";
                 },
                 [&](const Dielectric& d) { out << "dielectric eps=" << d.eps_r; },
             },
             m);
  return out.str();
}

}  // namespace rydcp::materials
