#include <doctest.h>

#include <cmath>

#include "rydcp/atomic/atom.hpp"
#include "rydcp/atomic/numerov.hpp"
#include "rydcp/constants.hpp"
#include "rydcp/error.hpp"

using namespace rydcp;
using namespace rydcp::atomic;

namespace {

const Atom& rb() {
  static const Atom atom;
  return atom;
}

RadialWavefunction hydrogen(int n, int l, double step) {
  GridSpec g;
  g.step = step;
  return solve_radial({n, l, 2 * l + 1, 1}, -0.5 / (n * n), 1.0, [](double r) { return -1.0 / r; }, g);
}

}  // namespace

TEST_SUITE("atomic") {
  TEST_CASE("state labels and validation") {
    CHECK(parse_state("30S").label() == "30S1/2");
    CHECK(parse_state("29P3/2").two_j == 3);
    CHECK(parse_state(parse_state("28D5/2").label()) == parse_state("28D5/2"));
    CHECK_FALSE(AtomicState{3, 3, 7, 1}.is_valid());
    CHECK_FALSE(AtomicState{5, 1, 5, 1}.is_valid());
    CHECK_THROWS_AS(AtomicState({5, 0, 3, 1}).validate(), InvalidArgument);
    CHECK_THROWS_AS(parse_state("30X"), InvalidArgument);
  }

  TEST_CASE("quantum defects follow the tabulated series") {
    CHECK(rb().quantum_defect(1, 3, 30) == doctest::Approx(2.6416737 + 0.2950 / std::pow(30 - 0.2950, 2)).epsilon(1e-12));
    CHECK(rb().quantum_defect(1, 3, 30) == doctest::Approx(2.64201).epsilon(1e-5));
    const double nstar = 30 - rb().quantum_defect(0, 1, 30);
    CHECK(nstar == doctest::Approx(26.8687).epsilon(1e-4));
    CHECK(rb().binding_energy(s_state(30)) == doctest::Approx(-rb().rydberg_energy() / (nstar * nstar)));
  }

  TEST_CASE("level ordering") {
    for (int n = 10; n < 60; n += 7) {
      CHECK(rb().binding_energy(s_state(n)) < rb().binding_energy(s_state(n + 1)));
      CHECK(rb().binding_energy(s_state(n)) < rb().binding_energy({n, 1, 1, 1}));
      CHECK(rb().binding_energy({n, 1, 3, 1}) < rb().binding_energy({n, 2, 3, 1}));
    }
  }

  TEST_CASE("reference transition frequencies") {
    const double w = rb().transition_frequency(s_state(30), {30, 1, 1, 1});
    CHECK(w == doctest::Approx(9.88e11).epsilon(0.01));
    const double lambda = 2 * constants::pi * constants::c / std::abs(rb().transition_frequency(s_state(15), {14, 1, 1, 1}));
    CHECK(lambda == doctest::Approx(139e-6).epsilon(0.02));
  }

  TEST_CASE("Numerov reproduces hydrogen expectation values") {
    for (auto [n, l] : {std::pair{10, 0}, std::pair{10, 1}, std::pair{20, 3}}) {
      const auto wf = hydrogen(n, l, 0.01);
      CHECK(wf.norm() == doctest::Approx(1.0).epsilon(1e-4));
      CHECK(wf.node_count() == n - l - 1);
      CHECK(wf.expectation(1) == doctest::Approx(0.5 * (3.0 * n * n - l * (l + 1))).epsilon(1e-4));
    }
  }

  TEST_CASE("hydrogen 1s-2p radial integral") {
    const double r = radial_integral(hydrogen(1, 0, 0.005), hydrogen(2, 1, 0.005));
    CHECK(std::abs(r) == doctest::Approx(128.0 * std::sqrt(6.0) / 243.0).epsilon(1e-4));
  }

  TEST_CASE("radial matrix elements are converged in the mesh step") {
    const AtomicState a = s_state(30), b{29, 1, 3, 1};
    GridSpec fine;
    fine.step /= 4.0;
    const Atom fine_atom(rb87_defaults(), fine);
    const double coarse = rb().radial_matrix_element(a, b);
    CHECK(std::abs(coarse) > 100.0);
    CHECK(fine_atom.radial_matrix_element(a, b) == doctest::Approx(coarse).epsilon(1e-4));
  }

  TEST_CASE("dipole selection rules") {
    const auto d = rb().dipole_element(s_state(30), {30, 2, 3, 1});
    CHECK(d.cartesian.norm() == 0.0);
    CHECK(rb().dipole_element(s_state(30), {30, 1, 1, 1}).cartesian.norm() > 0.0);
  }

  TEST_CASE("two-level polarizability") {
    Transition t;
    t.omega = 2e12;
    t.strength = Matrix3c::Identity() * 4e-56;
    for (double xi : {0.0, 1e11, 5e12}) {
      const auto a = Atom::polarizability({t}, std::complex<double>(0.0, xi));
      const double expect = 2.0 * t.omega * 4e-56 / (constants::hbar * (t.omega * t.omega + xi * xi));
      CHECK(a(2, 2).real() == doctest::Approx(expect).epsilon(1e-12));
      CHECK(std::abs(a(2, 2).imag()) < 1e-12 * expect);
    }
    CHECK_THROWS_AS(Atom::polarizability({t}, std::complex<double>(2e12, 0.0), 0.0), InvalidArgument);
  }

  TEST_CASE("oscillator strengths of a Rydberg S state nearly exhaust the sum rule") {
    // xi^2 alpha(i xi) -> e^2 / m_e for xi far above every transition frequency
    const double xi = 1e18;
    const auto a = rb().polarizability(s_state(30), std::complex<double>(0.0, xi));
    const double trk = constants::e * constants::e / constants::m_e;
    CHECK(a(2, 2).real() * xi * xi == doctest::Approx(trk).epsilon(0.05));
    CHECK(a(0, 0).real() == doctest::Approx(a(2, 2).real()).epsilon(1e-10));
  }

  TEST_CASE("polarizability converges in the basis window") {
    const auto c = rb().polarizability_convergence(s_state(30), std::complex<double>(0.0, 1e11));
    CHECK(c.relative_change < 1e-3);
  }

  TEST_CASE("thermal photon number") {
    CHECK(thermal_photon_number(1e12, 0.0) == 0.0);
    const double x = constants::hbar * 1e12 / (constants::k_B * 300.0);
    CHECK(thermal_photon_number(1e12, 300.0) == doctest::Approx(1.0 / std::expm1(x)));
    CHECK(thermal_photon_number(1e10, 300.0) == doctest::Approx(constants::k_B * 300.0 / (constants::hbar * 1e10)).epsilon(0.01));
    CHECK_THROWS_AS(thermal_photon_number(1e12, -1.0), InvalidArgument);
  }

  TEST_CASE("atom data file round trip") {
    const auto d = load_atom_data(std::filesystem::path(RYDCP_TEST_DATA_DIR) / "rb87.dat");
    const auto ref = rb87_defaults();
    CHECK(d.defects.size() == ref.defects.size());
    CHECK(d.defects.defect(1, 1, 25) == ref.defects.defect(1, 1, 25));
    CHECK(d.core.a3[1] == ref.core.a3[1]);
    CHECK_THROWS_AS(load_atom_data("/nonexistent/rb.dat"), InvalidArgument);
  }
}
