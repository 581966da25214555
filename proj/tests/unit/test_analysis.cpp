#include <doctest.h>

#include <cmath>
#include <vector>

#include "rydcp/analysis/fits.hpp"
#include "rydcp/analysis/oscillation.hpp"
#include "rydcp/error.hpp"

using namespace rydcp;
using namespace rydcp::analysis;

TEST_SUITE("analysis") {
  TEST_CASE("power law round trip") {
    std::vector<double> z, u;
    for (int i = 0; i < 12; ++i) {
      z.push_back(1e-6 * std::pow(1.3, i));
      u.push_back(-2.5e-13 / std::pow(z.back(), 3.0));
    }
    const auto f = fit_power_law(z, u);
    CHECK(f.exponent == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(f.coefficient == doctest::Approx(2.5e-13).epsilon(1e-10));
    CHECK(f(2e-6) == doctest::Approx(u[0] / 8.0).epsilon(1e-10));
    CHECK(f.residual < 1e-12);
  }

  TEST_CASE("power law rejects oscillating or short data") {
    CHECK_THROWS_AS(fit_power_law(std::vector<double>{1, 2, 3, 4}, std::vector<double>{-1, 1, -1, -1}), InvalidArgument);
    CHECK_THROWS_AS(fit_power_law(std::vector<double>{1, 2, 3}, std::vector<double>{-1, -1, -1}), InvalidArgument);
  }

  TEST_CASE("C3 fits recover both forms") {
    std::vector<double> n, two, single;
    for (int k = 20; k <= 50; k += 3) {
      n.push_back(k);
      two.push_back(1.923e-16 * std::pow(k, 4) - 1.840e-15 * std::pow(k, 3));
      single.push_back(3e-19 * std::pow(k, 4.4));
    }
    const auto a = fit_c3_vs_n(n, two, C3Form::TwoTerm);
    CHECK(a.q1 == doctest::Approx(1.923e-16).epsilon(1e-9));
    CHECK(a.q2 == doctest::Approx(-1.840e-15).epsilon(1e-9));
    const auto b = fit_c3_vs_n(n, single, C3Form::SinglePower);
    CHECK(b.exponent == doctest::Approx(4.4).epsilon(1e-10));
    CHECK(b(30.0) == doctest::Approx(3e-19 * std::pow(30.0, 4.4)).epsilon(1e-9));
  }

  TEST_CASE("empirical model round trip") {
    EmpiricalModel truth;
    truth.p1_terms = {{7, -4e-25}, {0, -9.38e-15}};
    truth.p2_terms = {{4, 1.9e-16}, {3, -1.6e-15}};
    std::vector<C3Sample> samples;
    for (int n : {20, 25, 30, 35, 40}) {
      for (double T : {10.0, 60.0, 110.0, 160.0, 210.0, 300.0}) samples.push_back({double(n), T, truth.c3(n, T)});
    }
    const auto fit = fit_empirical_model(samples);
    for (double n : {22.0, 33.0, 40.0}) {
      CHECK(fit.c3(n, 150.0) == doctest::Approx(truth.c3(n, 150.0)).epsilon(1e-8));
    }
    CHECK(fit.in_domain(30, 100, 5e-6));
    CHECK_FALSE(fit.in_domain(60, 100, 5e-6));
    const auto v = empirical_potential(fit, 60, 100, 5e-6);
    CHECK(v.extrapolated);
  }

  TEST_CASE("reference empirical coefficients") {
    const auto m = EmpiricalModel::graphene_reference();
    CHECK(m.p1(30) == doctest::Approx(-4e-25 * std::pow(30.0, 7) - 9.38e-15));
    CHECK(m.p2(30) == doctest::Approx(1.866e-16 * std::pow(30.0, 4) - 1.614e-15 * std::pow(30.0, 3)));
    CHECK(m.n_min == 20);
    CHECK(m.n_max == 40);
  }

  TEST_CASE("empirical fit needs a temperature spread") {
    std::vector<C3Sample> samples;
    for (int n : {20, 30, 40}) {
      for (double T : {10.0, 20.0, 30.0, 40.0, 50.0}) samples.push_back({double(n), T, 1.0});
    }
    CHECK_THROWS_AS(fit_empirical_model(samples), InvalidArgument);
  }

  TEST_CASE("linear fit") {
    const std::vector<double> x{1, 2, 3, 4, 5}, y{3, 5, 7, 9, 11};
    const auto f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.r_squared == doctest::Approx(1.0));
  }

  TEST_CASE("zero crossings and cycle length") {
    std::vector<double> z, u;
    const double lambda = 70e-6;
    for (int i = 0; i <= 4000; ++i) {
      z.push_back(1e-6 + i * 0.1e-6);
      u.push_back(std::cos(2.0 * M_PI * z.back() / lambda) / std::pow(z.back(), 2));
    }
    const auto c = zero_crossings(z, u);
    REQUIRE(c.size() >= 4);
    CHECK(c[0] == doctest::Approx(lambda / 4).epsilon(1e-4));
    const auto r = extract_oscillation_wavelength(z, u, 139e-6);
    CHECK(r.wavelength == doctest::Approx(lambda).epsilon(1e-4));
    CHECK(r.cycle_start >= 69.5e-6);
    CHECK(r.first_zero_crossing == doctest::Approx(lambda / 4).epsilon(1e-4));
    CHECK(zero_crossings(std::vector<double>{1, 2, 3}, std::vector<double>{-1, 0, 1}).size() == 1);
    CHECK_THROWS_AS(extract_oscillation_wavelength(z, u, 700e-6), InvalidArgument);
  }
}
