#include "rydcp/em/green.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "rydcp/constants.hpp"
#include "rydcp/error.hpp"
#include "rydcp/numeric/quadrature.hpp"

namespace rydcp::em {

namespace {

using constants::c;
using constants::pi;
constexpr cd I(0.0, 1.0);

std::vector<double> sorted_breaks(std::vector<double> pts, double lo, double hi) {
  std::vector<double> out{lo};
  std::sort(pts.begin(), pts.end());
  for (double p : pts) {
    if (p > out.back() && p < hi) out.push_back(p);
  }
  out.push_back(hi);
  return out;
}

void check_geometry(double z0) {
  if (!(z0 > 0.0) || !std::isfinite(z0)) throw InvalidArgument("atom-surface distance must be positive");
}

// Guided modes (thin dielectric spacers, coupled sheets) show up as nearly
// real poles of r(kappa). Zeros of 1/r are bracketed by sign changes of its
// real part on a log grid, then a secant step on the linearised 1/r gives
// the complex pole; breakpoints are placed at multiples of its width.
std::vector<double> pole_breaks(const ReflectionSlice& slice, double k0, double kappa_max) {
  std::vector<double> out;
  const double lo = 1e-10 * k0;
  const int samples = 600;
  const double ratio = std::pow(kappa_max / lo, 1.0 / samples);
  auto inverse = [&](double kappa, int pol) {
    const auto r = slice.evaluate(std::sqrt(kappa * kappa + k0 * k0), -kappa * kappa);
    const cd v = pol == 0 ? r.rs : r.rp;
    return std::abs(v) > 0.0 ? 1.0 / v : cd(std::numeric_limits<double>::infinity());
  };
  for (int pol = 0; pol < 2; ++pol) {
    double ka = lo;
    cd fa = inverse(ka, pol);
    for (int i = 1; i <= samples; ++i) {
      const double kb = lo * std::pow(ratio, i);
      const cd fb = inverse(kb, pol);
      if (std::isfinite(fa.real()) && std::isfinite(fb.real()) && (fa.real() < 0.0) != (fb.real() < 0.0)) {
        double x1 = ka, x2 = kb;
        cd f1 = fa, f2 = fb;
        cd pole = 0.0, previous = std::numeric_limits<double>::infinity();
        bool ok = false;
        for (int it = 0; it < 40 && f2 != f1; ++it) {
          pole = x2 - f2 * (x2 - x1) / (f2 - f1);
          if (!std::isfinite(pole.real()) || pole.real() <= 0.0) break;
          if (std::abs(pole - previous) <= 0.1 * std::abs(pole.imag()) + 1e-12 * pole.real()) {
            ok = true;
            break;
          }
          previous = pole;
          x1 = x2;
          f1 = f2;
          x2 = pole.real();
          if (x2 == x1) {
            ok = true;
            break;
          }
          f2 = inverse(x2, pol);
        }
        const double width = std::abs(pole.imag());
        if (ok && width < 0.1 * pole.real() && pole.real() < kappa_max) {
          for (double m : {-64.0, -16.0, -4.0, -1.0, 0.0, 1.0, 4.0, 16.0, 64.0}) {
            const double b = pole.real() + m * width;
            if (b > 0.0 && b < kappa_max) out.push_back(b);
          }
        }
      }
      ka = kb;
      fa = fb;
    }
  }
  return out;
}

}  // namespace

double static_limit_frequency(double z0) { return 1e-12 * c / z0; }

std::pair<ScatteringGreenDiagonal, ScatteringGreenDiagonal> green_scattering_real(
    const Reflector& stack, double z0, double omega, double temperature, const GreenOptions& opt) {
  check_geometry(z0);
  if (!(omega > 0.0)) throw InvalidArgument("real-frequency Green tensor needs omega > 0");
  ScatteringGreenDiagonal evan{0.0, 0.0, omega, z0, GreenPart::Evanescent};
  ScatteringGreenDiagonal prop{0.0, 0.0, omega, z0, GreenPart::Propagating};
  if (stack.is_vacuum()) return {evan, prop};

  const auto slice = stack.slice(omega, temperature);
  const double k0 = omega / c;
  const double c2w2 = 1.0 / (k0 * k0);
  using Pair = std::array<cd, 2>;

  // evanescent: kappa in [0, kappa_max], k_par^2 = kappa^2 + k0^2
  const double kappa_max = std::max(opt.kappa_cut / (2.0 * z0), 10.0 * k0);
  auto fe = [&](double kappa) -> Pair {
    const double kp = std::sqrt(kappa * kappa + k0 * k0);
    const auto r = slice->evaluate(kp, -kappa * kappa);
    const double damp = std::exp(-2.0 * kappa * z0);
    return {damp * (r.rs + c2w2 * kappa * kappa * r.rp), damp * (2.0 * c2w2 * kp * kp * r.rp)};
  };
  const double scale_e = 1.0 / z0 + c2w2 / (z0 * z0 * z0);
  numeric::QuadOptions qe{1e-3 * opt.rel_tol * scale_e, opt.rel_tol, opt.max_intervals};
  auto pts = pole_breaks(*slice, k0, kappa_max);
  for (double p : {k0, 0.5 / z0, 2.0 / z0, 5.0 / z0}) pts.push_back(p);
  const auto be = sorted_breaks(std::move(pts), 0.0, kappa_max);
  const auto ie = numeric::integrate<Pair>(fe, std::span<const double>(be), qe, "green.evanescent");
  evan.xx = ie.value[0] / (8.0 * pi);
  evan.zz = ie.value[1] / (8.0 * pi);

  // propagating: k_perp in [0, k0], panels no wider than a quarter oscillation
  auto fp = [&](double kperp) -> Pair {
    const double kp = std::sqrt((k0 - kperp) * (k0 + kperp));
    const auto r = slice->evaluate(kp, kperp * kperp);
    const cd phase = std::exp(2.0 * I * kperp * z0);
    return {phase * (r.rs - c2w2 * kperp * kperp * r.rp), phase * (2.0 * c2w2 * kp * kp * r.rp)};
  };
  const double width = pi / (4.0 * z0);
  const int panels = std::max(1, static_cast<int>(std::ceil(k0 / width)));
  std::vector<double> bp(static_cast<std::size_t>(panels) + 1);
  for (int i = 0; i <= panels; ++i) bp[static_cast<std::size_t>(i)] = k0 * i / panels;
  numeric::QuadOptions qp{1e-3 * opt.rel_tol * 3.0 * k0, opt.rel_tol, opt.max_intervals};
  const auto ip = numeric::integrate<Pair>(fp, std::span<const double>(bp), qp, "green.propagating");
  prop.xx = I * ip.value[0] / (8.0 * pi);
  prop.zz = I * ip.value[1] / (8.0 * pi);
  return {evan, prop};
}

MatsubaraGreen green_scattering_matsubara(const Reflector& stack, double z0, double xi, double temperature,
                                          const GreenOptions& opt) {
  check_geometry(z0);
  if (!(xi >= 0.0)) throw InvalidArgument("Matsubara frequency must be non-negative");
  MatsubaraGreen out;
  out.xi = xi;
  out.g = {0.0, 0.0, cd(0.0, xi), z0, GreenPart::ImaginaryAxis};
  if (stack.is_vacuum()) return out;

  const bool is_static = xi == 0.0;
  double xi_eval = xi;
  if (is_static && stack.needs_static_limit()) xi_eval = static_limit_frequency(z0);
  const auto slice = stack.slice(cd(0.0, xi_eval), temperature);
  const double kx = xi / c;  // lower end of kappa
  const double xi2 = xi * xi;
  const double c2 = c * c;

  // kappa = xi/c + s, k_par^2 = s (2 xi/c + s)
  auto f = [&](double s) -> std::array<double, 2> {
    const double kappa = kx + s;
    const double kp2 = s * (2.0 * kx + s);
    const auto r = slice->evaluate(std::sqrt(kp2), -kappa * kappa);
    const double damp = std::exp(-2.0 * kappa * z0);
    return {damp * (xi2 * r.rs.real() - c2 * kappa * kappa * r.rp.real()), damp * (-2.0 * c2 * kp2 * r.rp.real())};
  };
  const double s_max = opt.kappa_cut / (2.0 * z0);
  const double scale = c2 / (z0 * z0 * z0) * std::exp(-2.0 * kx * z0);
  numeric::QuadOptions q{1e-3 * opt.rel_tol * scale, opt.rel_tol, opt.max_intervals};
  const auto br = sorted_breaks({0.5 / z0, 2.0 / z0, 5.0 / z0}, 0.0, s_max);
  const auto res = numeric::integrate<std::array<double, 2>>(f, std::span<const double>(br), q, "green.matsubara");
  out.h_xx = res.value[0] / (8.0 * pi);
  out.h_zz = res.value[1] / (8.0 * pi);
  if (!is_static) {
    out.g.xx = out.h_xx / xi2;
    out.g.zz = out.h_zz / xi2;
  }
  return out;
}

}  // namespace rydcp::em
