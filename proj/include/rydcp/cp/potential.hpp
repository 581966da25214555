#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

#include "rydcp/atomic/atom.hpp"
#include "rydcp/em/green.hpp"

namespace rydcp::cp {

struct CPOptions {
  atomic::BasisWindow basis;
  /// Matsubara sum stops once five consecutive terms are each below
  /// tol * |partial sum|. At T = 0 the sum becomes a frequency integral
  /// evaluated to the same relative tolerance.
  double matsubara_tol = 1e-8;
  int max_matsubara_terms = 100000;
  em::GreenOptions green;
};

/// Resonant term of one intermediate level k. Shares are |total| / sum |total|.
struct TransitionContribution {
  atomic::AtomicState level;
  double omega = 0.0;  // omega_ku (rad/s)
  double evanescent = 0.0;   // Hz
  double propagating = 0.0;  // Hz
  double total = 0.0;        // Hz
  double share = 0.0;
  bool downward() const { return omega < 0.0; }
};

/// Potential energies as U/h in Hz.
struct CPBreakdown {
  double nonresonant = 0.0;
  double resonant_evanescent = 0.0;
  double resonant_propagating = 0.0;
  double total = 0.0;
  int matsubara_terms = 0;
  std::vector<TransitionContribution> per_transition;

  double resonant() const { return resonant_evanescent + resonant_propagating; }
};

struct NonresonantResult {
  double value = 0.0;  // Hz
  int terms = 0;
};

struct ResonantResult {
  double evanescent = 0.0;   // Hz
  double propagating = 0.0;  // Hz
  std::vector<TransitionContribution> per_transition;
};

/// Thermal Casimir-Polder potential of one atom species above one reflector.
/// Green tensors are cached: Matsubara values per (z0, T) and real-frequency
/// values per exact (z0, omega, T), so scans over states reuse them.
/// Thread safe; the atom and reflector must outlive the calculator.
class Calculator {
 public:
  Calculator(const atomic::Atom& atom, const em::Reflector& stack, CPOptions opt = {});

  const CPOptions& options() const { return opt_; }

  NonresonantResult nonresonant(const atomic::AtomicState& u, double z0, double temperature) const;
  ResonantResult resonant(const atomic::AtomicState& u, double z0, double temperature) const;
  CPBreakdown total(const atomic::AtomicState& u, double z0, double temperature) const;
  /// sum_u p_u U_u (Hz); probabilities must be >= 0 and sum to 1 within 1e-12.
  double mixed(const std::vector<std::pair<atomic::AtomicState, double>>& weights, double z0,
               double temperature) const;

  /// h(xi_j) = xi_j^2 G(i xi_j) for Matsubara index j (cached).
  em::MatsubaraGreen matsubara_green(double z0, double temperature, int j) const;
  /// Evanescent and propagating G at real omega (cached by exact value).
  std::pair<em::ScatteringGreenDiagonal, em::ScatteringGreenDiagonal> real_green(double z0, double omega,
                                                                                 double temperature) const;

 private:
  std::shared_ptr<const std::vector<atomic::Transition>> transitions(const atomic::AtomicState& u) const;

  const atomic::Atom& atom_;
  const em::Reflector& stack_;
  CPOptions opt_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<double, double>, std::vector<em::MatsubaraGreen>> matsubara_;
  mutable std::map<std::tuple<double, double, double>,
                   std::pair<em::ScatteringGreenDiagonal, em::ScatteringGreenDiagonal>>
      real_;
  mutable std::map<atomic::AtomicState, std::shared_ptr<const std::vector<atomic::Transition>>> transitions_;
};

/// Matsubara frequency xi_j = 2 pi k T j / hbar.
double matsubara_frequency(int j, double temperature);

NonresonantResult nonresonant_potential(const atomic::Atom& atom, const atomic::AtomicState& u,
                                        const em::Reflector& stack, double z0, double temperature,
                                        const CPOptions& opt = {});
ResonantResult resonant_potential(const atomic::Atom& atom, const atomic::AtomicState& u,
                                  const em::Reflector& stack, double z0, double temperature,
                                  const CPOptions& opt = {});
CPBreakdown total_potential(const atomic::Atom& atom, const atomic::AtomicState& u, const em::Reflector& stack,
                            double z0, double temperature, const CPOptions& opt = {});
double mixed_state_potential(const atomic::Atom& atom,
                             const std::vector<std::pair<atomic::AtomicState, double>>& weights,
                             const em::Reflector& stack, double z0, double temperature,
                             const CPOptions& opt = {});

}  // namespace rydcp::cp
