#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "rydcp/atomic/state.hpp"

namespace rydcp::atomic {

/// Mesh settings for the radial solver. The mesh is uniform in x = sqrt(r)
/// and anchored at x = 0, so wavefunctions of different states share nodes.
struct GridSpec {
  double step = 0.01;          // in sqrt(a0)
  double r_floor = 1e-4;       // innermost radius considered (a0)
  double outer_scale = 1.0;    // r_out = outer_scale * 2 n (n + 15)
  double min_points_per_oscillation = 10.0;
};

/// R(r) on an increasing radial grid (Bohr radii, a0^-3/2).
struct RadialWavefunction {
  AtomicState state;
  std::vector<double> grid;
  std::vector<double> values;

  // Numerov representation: chi[i] at x = (first_index + i) * step, with
  // R = chi x^-3/2. Used for matrix elements on the shared x mesh.
  double step = 0.0;
  std::size_t first_index = 0;
  std::vector<double> chi;

  double r_in() const { return grid.front(); }
  double r_out() const { return grid.back(); }

  /// Trapezoidal integral of R^2 r^2 on the stored grid.
  double norm() const;
  /// Sign changes of R(r).
  int node_count() const;
  /// <r^k> from the x-mesh quadrature.
  double expectation(int power) const;
};

/// Solves the radial equation for energy `energy` (Hartree) in potential
/// `potential(r)` (Hartree, without the centrifugal term) by inward Numerov
/// integration. `mass_ratio` is the reduced mass in units of m_e.
/// Throws ConvergenceError if the mesh cannot resolve the local oscillation.
RadialWavefunction solve_radial(const AtomicState& state, double energy, double mass_ratio,
                                const std::function<double(double)>& potential,
                                const GridSpec& spec = {});

/// Integral of R_a R_b r^(power+2) dr over the common support (atomic units).
/// Both wavefunctions must share the same mesh step.
double radial_integral(const RadialWavefunction& a, const RadialWavefunction& b, int power = 1);

}  // namespace rydcp::atomic
