#pragma once

#include <string>

#include "rydcp/atomic/atom.hpp"

namespace rydcp::cp {

/// Characteristic lengths and temperatures of an atom at distance z0 in an
/// environment at temperature T, and the limits they imply. A condition
/// "a << b" is taken to hold when a is at least `margin` times smaller than b.
struct RegimeReport {
  double omega_minus = 0.0;  // rad/s
  double omega_plus = 0.0;
  double z_omega = 0.0;        // c / omega_+ (m)
  double z_omega_minus = 0.0;  // c / omega_-
  double z_T = 0.0;            // hbar c / k T (m), infinite at T = 0
  double T_z = 0.0;            // hbar c / (z0 k) (K)
  double T_omega = 0.0;        // hbar omega_+ / k (K)
  double T_omega_minus = 0.0;  // hbar omega_- / k
  double margin = 2.0;

  bool retarded = false;
  bool non_retarded = false;
  bool spectroscopic_low_t = false;
  bool spectroscopic_high_t = false;
  bool geometric_low_t = false;
  bool geometric_high_t = false;
  /// At least one pair of limits is in neither of its two regimes.
  bool intermediate = false;

  std::string flags() const;
};

/// For nS states the dominant transitions are nS -> (n-1)P and nS -> nP (both
/// fine-structure components); otherwise the two closest dipole-coupled levels.
RegimeReport regime_report(const atomic::Atom& atom, const atomic::AtomicState& u, double z0, double temperature,
                           double margin = 2.0);

}  // namespace rydcp::cp
