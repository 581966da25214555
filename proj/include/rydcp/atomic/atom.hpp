#pragma once

#include <array>
#include <complex>
#include <map>
#include <memory>
#include <shared_mutex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rydcp/atomic/atom_data.hpp"
#include "rydcp/atomic/numerov.hpp"
#include "rydcp/atomic/state.hpp"

namespace rydcp::atomic {

using Vector3c = Eigen::Vector3cd;
using Matrix3c = Eigen::Matrix3cd;

/// <bra| d |ket> in Cartesian components (C m), with d = -e r.
struct DipoleElement {
  AtomicState bra;
  AtomicState ket;
  Vector3c cartesian = Vector3c::Zero();
};

/// Intermediate states n' in [n - half_width, n + half_width], l' = l +- 1,
/// every allowed j'. States below the lowest valence shell are skipped.
struct BasisWindow {
  int half_width = 15;

  BasisWindow doubled() const { return {2 * half_width}; }
};

/// One intermediate fine-structure level k of a state u with the dipole
/// strength summed over the magnetic sublevels of k:
/// strength_ij = sum_m' <u|d_i|k m'> <k m'|d_j|u>.
struct Transition {
  AtomicState level;
  double omega = 0.0;  // omega_ku (rad/s), positive when k lies above u
  double radial = 0.0; // <u|r|k> radial integral (a0)
  Matrix3c strength = Matrix3c::Zero();  // C^2 m^2
};

struct PolarizabilityCheck {
  Matrix3c value;
  Matrix3c doubled;
  double relative_change = 0.0;
};

/// Rydberg structure of an alkali atom. Construction is cheap; wavefunctions
/// and radial integrals are computed on demand and cached. All methods are
/// safe to call concurrently.
class Atom {
 public:
  explicit Atom(AtomData data = rb87_defaults(), GridSpec grid = {});

  const AtomData& data() const { return data_; }
  const GridSpec& grid() const { return grid_; }

  double quantum_defect(int l, int two_j, int n) const;
  double effective_n(const AtomicState& s) const;
  /// Reduced-mass Rydberg energy (J).
  double rydberg_energy() const;
  /// -Ry / n*^2 (J). Throws InvalidArgument when n* <= 0.
  double binding_energy(const AtomicState& s) const;
  /// omega_ku = (E_k - E_u) / hbar (rad/s).
  double transition_frequency(const AtomicState& u, const AtomicState& k) const;

  std::shared_ptr<const RadialWavefunction> wavefunction(const AtomicState& s) const;
  /// Radial integral of R_a R_b r^3 (a0), cached per level pair.
  double radial_matrix_element(const AtomicState& a, const AtomicState& b) const;
  DipoleElement dipole_element(const AtomicState& u, const AtomicState& k) const;

  /// Intermediate levels of `u` inside the window, ordered by (n, l, j).
  std::vector<Transition> transitions(const AtomicState& u, const BasisWindow& basis = {}) const;

  /// Dipole polarizability tensor (SI, C m^2 / V) at complex frequency omega.
  /// Real omega uses damping eps = damping_fraction * |omega|; an exact pole
  /// with zero damping throws InvalidArgument.
  Matrix3c polarizability(const AtomicState& u, std::complex<double> omega,
                          const BasisWindow& basis = {}, double damping_fraction = 1e-6) const;
  /// Same as polarizability() on a precomputed transition list.
  static Matrix3c polarizability(const std::vector<Transition>& transitions,
                                 std::complex<double> omega, double damping_fraction = 1e-6);
  /// Compares the window against one twice as wide.
  PolarizabilityCheck polarizability_convergence(const AtomicState& u, std::complex<double> omega,
                                                 const BasisWindow& basis = {}) const;

 private:
  AtomData data_;
  GridSpec grid_;
  mutable std::shared_mutex mutex_;
  mutable std::map<AtomicState, std::shared_ptr<const RadialWavefunction>> wavefunctions_;
  mutable std::map<std::pair<AtomicState, AtomicState>, double> radials_;
};

/// Bose-Einstein occupation 1 / (exp(hbar omega / k T) - 1); 0 at T = 0.
double thermal_photon_number(double omega, double temperature);

}  // namespace rydcp::atomic
