#pragma once

#include <complex>
#include <utility>

#include "rydcp/em/layer_stack.hpp"

namespace rydcp::em {

enum class GreenPart { Evanescent, Propagating, ImaginaryAxis };

/// Diagonal of the equal-position scattering Green tensor (1/m);
/// yy equals xx by in-plane isotropy.
struct ScatteringGreenDiagonal {
  cd xx = 0.0;
  cd zz = 0.0;
  cd frequency = 0.0;
  double z0 = 0.0;
  GreenPart part = GreenPart::Evanescent;

  cd yy() const { return xx; }
};

/// Green tensor on the Matsubara axis. h = xi^2 G (1/(m s^2)) stays finite
/// at xi = 0, where G itself diverges.
struct MatsubaraGreen {
  double xi = 0.0;
  double h_xx = 0.0;
  double h_zz = 0.0;
  /// G(i xi); zero at xi = 0 where only h is defined.
  ScatteringGreenDiagonal g;
};

struct GreenOptions {
  double rel_tol = 1e-9;
  int max_intervals = 4000;
  /// Upper cut of the evanescent integral, in units of 1/(2 z0) (the cut is
  /// at least ten free-space wavenumbers beyond the light line).
  double kappa_cut = 40.0;
};

/// Evanescent (kappa in [0, kappa_max]) and propagating (k_perp in [0, omega/c])
/// parts at real omega > 0.
std::pair<ScatteringGreenDiagonal, ScatteringGreenDiagonal> green_scattering_real(
    const Reflector& stack, double z0, double omega, double temperature, const GreenOptions& opt = {});

/// G(i xi) and h = xi^2 G for xi >= 0. At xi = 0 the reflection coefficients
/// are taken in the static limit.
MatsubaraGreen green_scattering_matsubara(const Reflector& stack, double z0, double xi, double temperature,
                                          const GreenOptions& opt = {});

/// Frequency used in place of xi = 0 when a reflector needs the static limit.
double static_limit_frequency(double z0);

}  // namespace rydcp::em
