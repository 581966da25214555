#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "rydcp/constants.hpp"
#include "rydcp/em/green.hpp"
#include "rydcp/em/layer_stack.hpp"
#include "rydcp/error.hpp"

using namespace rydcp;
using namespace rydcp::em;
using constants::c;
using constants::pi;

namespace {

const cd I(0.0, 1.0);

// Reflection of a plane wave incident from layer 0 obtained by imposing the
// boundary conditions at every interface at once. s: psi = E_y, p: psi = H_y.
// Layer j carries psi_j = a_j exp(-i k_j (z - top_j)) + b_j exp(i k_j (z - bottom_j)),
// interfaces at z = 0, -d_1, -d_1 - d_2, ...; a_0 = 1, b_0 = r, b_N = 0.
cd oracle(const LayerStack& s, cd omega, double temperature, double k_par, cd kz2_vacuum, bool p_pol) {
  const auto& layers = s.layers();
  const auto& sheets = s.sheets();
  const int n = static_cast<int>(layers.size()) - 1;
  const cd k0sq = omega * omega / (c * c);
  std::vector<cd> k(layers.size()), eps(layers.size());
  for (int j = 0; j <= n; ++j) {
    const auto& m = layers[static_cast<std::size_t>(j)].medium;
    eps[j] = materials::permittivity(m, omega);
    const double mu = layers[static_cast<std::size_t>(j)].mu;
    k[j] = std::sqrt((eps[j] * mu - 1.0) * k0sq + kz2_vacuum);
    if (k[j].imag() < 0.0) k[j] = -k[j];
  }
  // unknowns: r, (a_1, b_1), ..., (a_{n-1}, b_{n-1}), t
  const int size = 2 * n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size, size);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(size);
  auto down = [&](int j) { return j == 0 ? -1 : (j == n ? size - 1 : 2 * j - 1); };
  auto up = [&](int j) { return j == 0 ? 0 : (j == n ? -1 : 2 * j); };
  // down waves are referenced to the top of their layer, up waves to the bottom, so nothing overflows
  std::vector<double> zi(static_cast<std::size_t>(n), 0.0);
  for (int i = 1; i < n; ++i) zi[i] = zi[i - 1] - layers[static_cast<std::size_t>(i)].thickness;
  auto top = [&](int j) { return j == 0 ? 0.0 : zi[j - 1]; };
  auto bottom = [&](int j) { return j == n ? zi[n - 1] : zi[j]; };
  for (int i = 0; i < n; ++i) {
    const double z = zi[i];
    cd sigma = 0.0;
    if (sheets[static_cast<std::size_t>(i)]) {
      sigma = materials::sheet_conductivity(*sheets[static_cast<std::size_t>(i)], omega, k_par, temperature);
    }
    const int row = 2 * i;
    // coefficient of psi and psi' of layer j at z, for the down/up amplitude
    for (int side = 0; side < 2; ++side) {
      const int j = i + side;
      const double sign = side == 0 ? 1.0 : -1.0;
      const double mu = layers[static_cast<std::size_t>(j)].mu;
      const cd w = p_pol ? 1.0 / eps[j] : cd(1.0 / mu);
      const cd ed = std::exp(-I * k[j] * (z - top(j))), eu = std::exp(I * k[j] * (z - bottom(j)));
      const cd dd = -I * k[j] * ed, du = I * k[j] * eu;
      // first row: s continuity of psi; p: psi jump + sigma E_x
      // second row: s derivative jump; p: continuity of psi'/eps
      auto add = [&](int col, cd value, cd deriv) {
        cd r1, r2;
        if (p_pol) {
          r1 = sign * value;
          if (side == 0) r1 += sigma * w * deriv / (I * omega * constants::epsilon0);
          r2 = sign * w * deriv;
        } else {
          r1 = sign * value;
          r2 = sign * w * deriv;
          if (side == 0) r2 += I * omega * constants::mu0 * sigma * value;
        }
        if (col >= 0) {
          m(row, col) += r1;
          m(row + 1, col) += r2;
        } else if (j == 0) {
          rhs(row) -= r1;
          rhs(row + 1) -= r2;
        }
      };
      add(down(j), ed, dd);
      add(up(j), eu, du);
    }
  }
  const Eigen::VectorXcd x = m.fullPivLu().solve(rhs);
  return x(0);
}

LayerStack sandwich() {
  materials::GrapheneParams g;
  g.fermi_energy_ev = 0.15;
  return LayerStack({Layer{materials::Dielectric{1.0}, kInfiniteThickness, 1.0, ""},
                     Layer{materials::Dielectric{3.58}, 30e-9, 1.0, "hBN"},
                     Layer{materials::DrudeMetal{}, 200e-9, 1.0, "gold"},
                     Layer{materials::Dielectric{2.1}, kInfiniteThickness, 1.0, "substrate"}},
                    {materials::KuboGraphene{g}, materials::KuboGraphene{g}, std::nullopt});
}

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

// image-dipole scattering Green tensor of a perfect mirror, wavenumber k (complex allowed)
std::pair<cd, cd> mirror(double z0, cd k) {
  const double r = 2.0 * z0;
  const cd kr = k * r;
  const cd pre = std::exp(I * kr) / (4.0 * pi * r);
  const cd transverse = pre * (1.0 + I / kr - 1.0 / (kr * kr));
  const cd longitudinal = pre * (2.0 / (kr * kr) - 2.0 * I / kr);
  return {-transverse, longitudinal};
}

}  // namespace

TEST_SUITE("em") {
  TEST_CASE("single interface gives the Fresnel coefficients") {
    const auto s = LayerStack({Layer{}, Layer{materials::Dielectric{4.0}, kInfiniteThickness, 1.0, ""}}, {std::nullopt});
    const double k0 = 1e6;
    const double kp = 0.6 * k0;
    const auto r = s.reflection(kp, k0 * c, 0.0);
    const cd kz1 = std::sqrt(cd(k0 * k0 - kp * kp)), kz2 = std::sqrt(cd(4.0 * k0 * k0 - kp * kp));
    CHECK(rel(r.rs, (kz1 - kz2) / (kz1 + kz2)) < 1e-14);
    CHECK(rel(r.rp, (4.0 * kz1 - kz2) / (4.0 * kz1 + kz2)) < 1e-14);
  }

  TEST_CASE("multilayer recursion matches a direct boundary-value solve") {
    const auto s = sandwich();
    for (cd omega : {cd(3e14, 0.0), cd(2e13, 0.0), cd(0.0, 5e13), cd(0.0, 1e11)}) {
      const auto slice = s.slice(omega, 300.0);
      const double k0 = std::abs(omega) / c;
      for (double f : {0.3, 0.95, 1.5, 40.0, 3e3}) {
        const double kp = f * k0;
        const auto r = slice->at(kp);
        const cd kz2 = omega * omega / (c * c) - kp * kp;
        const cd os = oracle(s, omega, 300.0, kp, kz2, false), op = oracle(s, omega, 300.0, kp, kz2, true);
        CHECK(rel(r.rs, os) < 1e-8);
        CHECK(rel(r.rp, op) < 1e-8);
      }
    }
  }

  TEST_CASE("supplied vacuum k_z stays accurate next to the light line") {
    const auto s = sandwich();
    const double omega = 2e14, k0 = omega / c;
    const auto slice = s.slice(omega, 300.0);
    for (double kappa : {1e-9 * k0, 1e-5 * k0}) {
      const double kp = std::sqrt(kappa * kappa + k0 * k0);
      const auto r = slice->evaluate(kp, -kappa * kappa);
      CHECK(rel(r.rp, oracle(s, omega, 300.0, kp, -kappa * kappa, true)) < 1e-8);
      CHECK(rel(r.rs, oracle(s, omega, 300.0, kp, -kappa * kappa, false)) < 1e-8);
    }
  }

  TEST_CASE("perfect mirror at real frequency against the image dipole") {
    const auto mirror_stack = ConstantReflector::perfect_mirror();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> lz(std::log(1e-7), std::log(1e-3)), lw(std::log(1e10), std::log(1e15));
    for (int i = 0; i < 10; ++i) {
      const double z0 = std::exp(lz(rng)), omega = std::exp(lw(rng));
      const auto [e, p] = green_scattering_real(mirror_stack, z0, omega, 0.0);
      const auto [gxx, gzz] = mirror(z0, omega / c);
      CHECK(rel(e.xx + p.xx, gxx) < 1e-6);
      CHECK(rel(e.zz + p.zz, gzz) < 1e-6);
    }
  }

  TEST_CASE("perfect mirror on the imaginary axis") {
    const auto mirror_stack = ConstantReflector::perfect_mirror();
    const double z0 = 2e-6;
    for (double xi : {1e11, 1e14, 3e15}) {
      const auto g = green_scattering_matsubara(mirror_stack, z0, xi, 0.0);
      const auto [gxx, gzz] = mirror(z0, I * xi / c);
      CHECK(g.h_xx == doctest::Approx((xi * xi * gxx).real()).epsilon(1e-7));
      CHECK(g.h_zz == doctest::Approx((xi * xi * gzz).real()).epsilon(1e-7));
    }
    const auto g0 = green_scattering_matsubara(mirror_stack, z0, 0.0, 0.0);
    const double a3 = std::pow(2.0 * z0, 3);
    CHECK(g0.h_xx == doctest::Approx(-c * c / (4.0 * pi * a3)).epsilon(1e-8));
    CHECK(g0.h_zz == doctest::Approx(-2.0 * c * c / (4.0 * pi * a3)).epsilon(1e-8));
  }

  TEST_CASE("evanescent cut-off is converged") {
    const auto s = LayerStack::suspended_sheet(materials::KuboGraphene{});
    GreenOptions wide;
    wide.kappa_cut *= 2.0;
    const auto a = green_scattering_real(s, 1e-6, 1e12, 10.0).first;
    const auto b = green_scattering_real(s, 1e-6, 1e12, 10.0, wide).first;
    CHECK(rel(a.xx, b.xx) < 1e-8);
    CHECK(rel(a.zz, b.zz) < 1e-8);
  }

  TEST_CASE("Matsubara integral against a fine trapezoid rule") {
    const auto s = LayerStack::suspended_sheet(materials::KuboGraphene{});
    const double z0 = 3e-6, xi = 2.5e13, T = 300.0;
    const auto g = green_scattering_matsubara(s, z0, xi, T);
    const auto slice = s.slice(cd(0.0, xi), T);
    const double kx = xi / c, smax = 40.0 / (2.0 * z0);
    const int panels = 1000000;
    const double hstep = smax / panels;
    double sum_xx = 0.0, sum_zz = 0.0;
    for (int i = 0; i <= panels; ++i) {
      const double sv = i * hstep, kappa = kx + sv, kp2 = sv * (2.0 * kx + sv);
      const auto r = slice->evaluate(std::sqrt(kp2), -kappa * kappa);
      const double w = (i == 0 || i == panels) ? 0.5 : 1.0;
      const double damp = std::exp(-2.0 * kappa * z0);
      sum_xx += w * damp * (xi * xi * r.rs.real() - c * c * kappa * kappa * r.rp.real());
      sum_zz += w * damp * (-2.0 * c * c * kp2 * r.rp.real());
    }
    CHECK(g.h_xx == doctest::Approx(sum_xx * hstep / (8.0 * pi)).epsilon(1e-7));
    CHECK(g.h_zz == doctest::Approx(sum_zz * hstep / (8.0 * pi)).epsilon(1e-7));
  }

  TEST_CASE("thin-spacer guided modes do not stall the real-frequency integral") {
    const auto s = LayerStack::double_sheet(materials::KuboGraphene{}, materials::Dielectric{3.58}, 2e-9);
    const auto [e, p] = green_scattering_real(s, 2e-6, 1.0e14, 300.0);
    CHECK(std::isfinite(e.xx.real()));
    CHECK(std::isfinite(e.zz.imag()));
  }

  TEST_CASE("vacuum and invalid stacks") {
    const auto v = LayerStack::vacuum();
    CHECK(v.is_vacuum());
    const auto [e, p] = green_scattering_real(v, 1e-6, 1e12, 0.0);
    CHECK(e.xx == 0.0);
    CHECK_THROWS_AS(green_scattering_real(LayerStack::suspended_sheet(materials::KuboGraphene{}), -1.0, 1e12, 0.0),
                    InvalidArgument);
    CHECK_THROWS_AS(LayerStack::slab(materials::Dielectric{2.0}, -1e-9), InvalidArgument);
    CHECK_THROWS_AS(LayerStack({Layer{materials::Dielectric{2.0}}, Layer{}}, {std::nullopt}), InvalidArgument);
  }
}
