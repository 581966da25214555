#include "rydcp/materials/lindhard.hpp"

#include <cmath>

#include "rydcp/constants.hpp"
#include "rydcp/error.hpp"

namespace rydcp::materials {

namespace {

using cd = std::complex<double>;
constexpr cd I(0.0, 1.0);

// C_h(z) - z^2 with C_h(z) = z sqrt(z-1) sqrt(z+1) - log(z + sqrt(z-1) sqrt(z+1)).
// Scalar shifts keep the sign of a zero imaginary part, which selects the
// side of the cut on the real axis.
cd ch_minus_square(cd z) {
  const cd w = std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
  const cd plus = z + w;
  const cd minus = z - w;
  // (z + w)(z - w) = 1; take the log of whichever factor does not cancel
  const cd lg = std::abs(plus) >= std::abs(minus) ? std::log(plus) : -std::log(minus);
  return -z / plus - lg;
}

double ch_real(double a) { return a * std::sqrt(a * a - 1.0) - std::acosh(a); }
double c_real(double a) { return a * std::sqrt(1.0 - a * a) - std::acos(a); }

}  // namespace

std::string_view region_label(PlaneRegion r) {
  switch (r) {
    case PlaneRegion::R1A: return "1A";
    case PlaneRegion::R2A: return "2A";
    case PlaneRegion::R3A: return "3A";
    case PlaneRegion::R1B: return "1B";
    case PlaneRegion::R2B: return "2B";
    case PlaneRegion::R3B: return "3B";
  }
  return "?";
}

PlaneRegion classify_region(double x, double y) {
  if (!(x > 0.0) || !(y >= 0.0)) throw InvalidArgument("region classifier needs x > 0 and y >= 0");
  if (y < x) {
    if (y < 2.0 - x) return PlaneRegion::R1A;
    if (y > x - 2.0) return PlaneRegion::R2A;
    return PlaneRegion::R3A;
  }
  if (y < 2.0 - x) return PlaneRegion::R1B;
  if (y < x + 2.0) return PlaneRegion::R2B;
  return PlaneRegion::R3B;
}

std::complex<double> lindhard_reduced(double x, std::complex<double> y) {
  if (!(x > 0.0)) throw InvalidArgument("Lindhard function needs q > 0");
  if (y.imag() < 0.0) throw InvalidArgument("Lindhard function is evaluated in the upper half plane only");
  cd s;
  cd t4;
  cd t5;
  if (y.imag() == 0.0) {
    // retarded limit y + i0
    const double yr = y.real();
    s = yr < x ? cd(std::sqrt(x * x - yr * yr), 0.0) : cd(0.0, -std::sqrt(yr * yr - x * x));
    t4 = cd((2.0 + yr) / x, 0.0);
    t5 = cd((2.0 - yr) / x, -0.0);
  } else {
    s = std::sqrt(x * x - y * y);
    t4 = (2.0 + y) / x;
    t5 = (2.0 - y) / x;
  }
  // -2 + (i x^2 / 4s) [C_h(t5) - C_h(t4)] with t5^2 - t4^2 = -8y/x^2 taken out exactly
  return -2.0 * x * x / (s * (s - I * y)) +
         I * x * x / (4.0 * s) * (ch_minus_square(t5) - ch_minus_square(t4));
}

std::complex<double> lindhard_region_formula(double x, double y, bool as_printed_3a) {
  const double t4 = (2.0 + y) / x;
  const double t5 = (2.0 - y) / x;
  const double t6 = (y - 2.0) / x;
  const double root = std::sqrt(std::abs(y * y - x * x));
  const double t2 = x * x / root;
  const double t3 = t2;
  switch (classify_region(x, y)) {
    case PlaneRegion::R1A:
      return {-2.0, 0.25 * t3 * (ch_real(t5) - ch_real(t4))};
    case PlaneRegion::R2A:
      return {-2.0 + 0.25 * t3 * c_real(t5), -0.25 * t3 * ch_real(t4)};
    case PlaneRegion::R3A:
      if (as_printed_3a) return {-2.0 + 0.25 * t3 * (c_real(t4) - c_real(t6)), 0.0};
      return {-2.0 + 0.25 * t3 * (c_real(t4) + c_real(t5)), 0.0};
    case PlaneRegion::R1B:
      return {-2.0 + 0.25 * t2 * (ch_real(t4) - ch_real(t5)), 0.0};
    case PlaneRegion::R2B:
      return {-2.0 + 0.25 * t2 * ch_real(t4), 0.25 * t2 * c_real(t5)};
    case PlaneRegion::R3B:
      return {-2.0 + 0.25 * t2 * (ch_real(t4) - ch_real(t6)), -0.25 * constants::pi * t2};
  }
  return {};
}

double fermi_wavenumber(const GrapheneParams& p) {
  return p.fermi_energy() / (constants::hbar * constants::graphene_fermi_velocity);
}

std::complex<double> lindhard_polarizability(double q, std::complex<double> omega, const GrapheneParams& p) {
  const double ef = p.fermi_energy();
  if (!(ef > 0.0)) throw InvalidArgument("Lindhard model needs a non-zero Fermi energy");
  if (!(q > 0.0)) throw InvalidArgument("Lindhard model needs q > 0");
  const double kf = fermi_wavenumber(p);
  const double t1 = kf / (constants::pi * constants::hbar * constants::graphene_fermi_velocity);
  const cd y = constants::hbar * omega / ef;
  if (y.imag() == 0.0 && y.real() < 0.0) throw InvalidArgument("Lindhard model needs omega >= 0");
  return t1 * lindhard_reduced(q / kf, y);
}

std::complex<double> rpa_rt_polarizability(double q, std::complex<double> omega, const GrapheneParams& p) {
  p.validate();
  const cd p_static = lindhard_polarizability(q, 0.0, p);
  if (omega == 0.0) return p_static;
  const cd shifted = lindhard_polarizability(q, omega + I * p.gamma, p);
  const cd r = I * p.gamma / omega;
  return (1.0 + r) * shifted / (1.0 + r * shifted / p_static);
}

std::complex<double> nonlocal_conductivity(double q, std::complex<double> omega, const GrapheneParams& p) {
  const cd pg = rpa_rt_polarizability(q, omega, p);
  return I * constants::e * constants::e * omega * pg / (q * q);
}

std::complex<double> rpa_rt_dielectric(double q, std::complex<double> omega, const GrapheneParams& p,
                                       double eps_r) {
  const double vq = constants::e * constants::e / (2.0 * constants::epsilon0 * q);
  return eps_r - vq * rpa_rt_polarizability(q, omega, p);
}

}  // namespace rydcp::materials
