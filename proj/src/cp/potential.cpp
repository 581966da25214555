#include "rydcp/cp/potential.hpp"

#include <cmath>

#include "rydcp/constants.hpp"
#include "rydcp/error.hpp"
#include "rydcp/numeric/quadrature.hpp"

namespace rydcp::cp {

using constants::h;
using constants::hbar;
using constants::k_B;
using constants::mu0;
using constants::pi;

namespace {

void check_inputs(double z0, double temperature) {
  if (!(z0 > 0.0) || !std::isfinite(z0)) throw InvalidArgument("atom-surface distance must be positive");
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) throw InvalidArgument("temperature must be >= 0");
}

// alpha . h with diagonal tensors (yy = xx for the planar geometry)
double contract(const atomic::Matrix3c& alpha, double hxx, double hzz) {
  return (alpha(0, 0).real() + alpha(1, 1).real()) * hxx + alpha(2, 2).real() * hzz;
}

double contract(const atomic::Matrix3c& s, const em::ScatteringGreenDiagonal& g) {
  return (s(0, 0).real() + s(1, 1).real()) * g.xx.real() + s(2, 2).real() * g.zz.real();
}

}  // namespace

double matsubara_frequency(int j, double temperature) {
  return 2.0 * pi * k_B * temperature * j / hbar;
}

Calculator::Calculator(const atomic::Atom& atom, const em::Reflector& stack, CPOptions opt)
    : atom_(atom), stack_(stack), opt_(std::move(opt)) {}

std::shared_ptr<const std::vector<atomic::Transition>> Calculator::transitions(
    const atomic::AtomicState& u) const {
  {
    std::lock_guard lock(mutex_);
    const auto it = transitions_.find(u);
    if (it != transitions_.end()) return it->second;
  }
  auto list = std::make_shared<const std::vector<atomic::Transition>>(atom_.transitions(u, opt_.basis));
  std::lock_guard lock(mutex_);
  return transitions_.emplace(u, std::move(list)).first->second;
}

em::MatsubaraGreen Calculator::matsubara_green(double z0, double temperature, int j) const {
  const auto key = std::make_pair(z0, temperature);
  {
    std::lock_guard lock(mutex_);
    const auto& list = matsubara_[key];
    if (j < static_cast<int>(list.size())) return list[static_cast<std::size_t>(j)];
  }
  const auto value =
      em::green_scattering_matsubara(stack_, z0, matsubara_frequency(j, temperature), temperature, opt_.green);
  std::lock_guard lock(mutex_);
  auto& list = matsubara_[key];
  // only contiguous prefixes are stored; other threads may have filled it meanwhile
  if (j == static_cast<int>(list.size())) list.push_back(value);
  return value;
}

std::pair<em::ScatteringGreenDiagonal, em::ScatteringGreenDiagonal> Calculator::real_green(
    double z0, double omega, double temperature) const {
  const auto key = std::make_tuple(z0, omega, temperature);
  {
    std::lock_guard lock(mutex_);
    const auto it = real_.find(key);
    if (it != real_.end()) return it->second;
  }
  auto value = em::green_scattering_real(stack_, z0, omega, temperature, opt_.green);
  std::lock_guard lock(mutex_);
  return real_.emplace(key, value).first->second;
}

NonresonantResult Calculator::nonresonant(const atomic::AtomicState& u, double z0, double temperature) const {
  check_inputs(z0, temperature);
  NonresonantResult out;
  if (stack_.is_vacuum()) return out;
  const auto list = transitions(u);
  auto term = [&](double xi, double hxx, double hzz) {
    return contract(atomic::Atom::polarizability(*list, std::complex<double>(0.0, xi)), hxx, hzz);
  };

  if (temperature == 0.0) {
    // (hbar mu0 / 2 pi) int_0^inf alpha(i xi) . h(xi) d xi, xi = s t / (1 - t)
    const double s = constants::c / (2.0 * z0);
    auto f = [&](double t) {
      const double xi = s * t / (1.0 - t);
      const auto g = em::green_scattering_matsubara(stack_, z0, xi, 0.0, opt_.green);
      return term(xi, g.h_xx, g.h_zz) * s / ((1.0 - t) * (1.0 - t));
    };
    numeric::QuadOptions q{0.0, opt_.matsubara_tol, 2000};
    const auto r = numeric::integrate<double>(f, 0.0, 1.0, q, "cp.nonresonant.zero_temperature");
    out.value = hbar * mu0 / (2.0 * pi) * r.value / h;
    out.terms = r.evaluations;
    return out;
  }

  const auto g0 = matsubara_green(z0, temperature, 0);
  double sum = 0.5 * term(0.0, g0.h_xx, g0.h_zz);
  int small_run = 0;
  int j = 1;
  for (; j < opt_.max_matsubara_terms; ++j) {
    const auto g = matsubara_green(z0, temperature, j);
    const double t = term(g.xi, g.h_xx, g.h_zz);
    sum += t;
    small_run = std::abs(t) < opt_.matsubara_tol * std::abs(sum) ? small_run + 1 : 0;
    if (small_run >= 5) break;
  }
  if (j >= opt_.max_matsubara_terms) {
    throw ConvergenceError("Matsubara sum did not converge within " + std::to_string(opt_.max_matsubara_terms) +
                               " terms",
                           "cp.matsubara", mu0 * k_B * temperature * sum / h);
  }
  out.value = mu0 * k_B * temperature * sum / h;
  out.terms = j + 1;
  return out;
}

ResonantResult Calculator::resonant(const atomic::AtomicState& u, double z0, double temperature) const {
  check_inputs(z0, temperature);
  ResonantResult out;
  const auto list = transitions(u);
  double norm = 0.0;
  for (const auto& t : *list) {
    TransitionContribution c;
    c.level = t.level;
    c.omega = t.omega;
    const double w = std::abs(t.omega);
    const double n_photon = atomic::thermal_photon_number(w, temperature);
    const double weight = t.omega < 0.0 ? -mu0 * (n_photon + 1.0) * w * w : mu0 * n_photon * w * w;
    if (weight != 0.0 && !stack_.is_vacuum()) {
      const auto [evan, prop] = real_green(z0, w, temperature);
      c.evanescent = weight * contract(t.strength, evan) / h;
      c.propagating = weight * contract(t.strength, prop) / h;
    }
    c.total = c.evanescent + c.propagating;
    out.evanescent += c.evanescent;
    out.propagating += c.propagating;
    norm += std::abs(c.total);
    out.per_transition.push_back(c);
  }
  if (norm > 0.0) {
    for (auto& c : out.per_transition) c.share = std::abs(c.total) / norm;
  }
  return out;
}

CPBreakdown Calculator::total(const atomic::AtomicState& u, double z0, double temperature) const {
  CPBreakdown b;
  const auto nres = nonresonant(u, z0, temperature);
  auto res = resonant(u, z0, temperature);
  b.nonresonant = nres.value;
  b.matsubara_terms = nres.terms;
  b.resonant_evanescent = res.evanescent;
  b.resonant_propagating = res.propagating;
  b.total = b.nonresonant + b.resonant_evanescent + b.resonant_propagating;
  b.per_transition = std::move(res.per_transition);
  return b;
}

double Calculator::mixed(const std::vector<std::pair<atomic::AtomicState, double>>& weights, double z0,
                         double temperature) const {
  if (weights.empty()) throw InvalidArgument("mixed state needs at least one component");
  double norm = 0.0;
  for (const auto& [s, p] : weights) {
    if (!(p >= 0.0)) throw InvalidArgument("state probabilities must be non-negative");
    norm += p;
  }
  if (std::abs(norm - 1.0) > 1e-12) {
    throw InvalidArgument("state probabilities must sum to 1 (got " + std::to_string(norm) + ")");
  }
  double u = 0.0;
  for (const auto& [s, p] : weights) {
    if (p > 0.0) u += p * total(s, z0, temperature).total;
  }
  return u;
}

NonresonantResult nonresonant_potential(const atomic::Atom& atom, const atomic::AtomicState& u,
                                        const em::Reflector& stack, double z0, double temperature,
                                        const CPOptions& opt) {
  return Calculator(atom, stack, opt).nonresonant(u, z0, temperature);
}

ResonantResult resonant_potential(const atomic::Atom& atom, const atomic::AtomicState& u,
                                  const em::Reflector& stack, double z0, double temperature,
                                  const CPOptions& opt) {
  return Calculator(atom, stack, opt).resonant(u, z0, temperature);
}

CPBreakdown total_potential(const atomic::Atom& atom, const atomic::AtomicState& u, const em::Reflector& stack,
                            double z0, double temperature, const CPOptions& opt) {
  return Calculator(atom, stack, opt).total(u, z0, temperature);
}

double mixed_state_potential(const atomic::Atom& atom,
                             const std::vector<std::pair<atomic::AtomicState, double>>& weights,
                             const em::Reflector& stack, double z0, double temperature, const CPOptions& opt) {
  return Calculator(atom, stack, opt).mixed(weights, z0, temperature);
}

}  // namespace rydcp::cp
