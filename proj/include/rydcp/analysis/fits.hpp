#pragma once

#include <span>
#include <string>
#include <vector>

namespace rydcp::analysis {

/// U = -C / z0^alpha fitted in log space. C > 0 for attractive data.
struct PowerLawFit {
  double coefficient = 0.0;  // Hz m^alpha
  double exponent = 0.0;
  double residual = 0.0;  // RMS of log-space residuals
  double z_min = 0.0;
  double z_max = 0.0;

  double operator()(double z0) const;
};

/// Needs >= 4 samples of one sign; mixed-sign (oscillating) data is rejected.
PowerLawFit fit_power_law(std::span<const double> z0, std::span<const double> potential);

enum class C3Form { TwoTerm, SinglePower };

/// C3(n) = q1 n^4 + q2 n^3, or C3(n) = a n^p.
struct C3Fit {
  C3Form form = C3Form::TwoTerm;
  double q1 = 0.0;
  double q2 = 0.0;
  double amplitude = 0.0;
  double exponent = 0.0;
  double residual = 0.0;  // RMS, absolute for TwoTerm, log-space for SinglePower

  double operator()(double n) const;
};

C3Fit fit_c3_vs_n(std::span<const double> n, std::span<const double> c3, C3Form form);

enum class P1Basis {
  Sparse,  // {n^7, 1}
  Full,    // {n^7, n^6, ..., 1}
};

/// C3(n, T) = p1(n) T + p2(n), p1 in Hz m^3/K and p2 in Hz m^3.
/// Polynomials are stored as (power, coefficient) pairs.
struct EmpiricalModel {
  struct Term {
    int power;
    double coefficient;
  };
  std::vector<Term> p1_terms;
  std::vector<Term> p2_terms;
  double n_min = 0.0, n_max = 0.0;
  double t_min = 0.0, t_max = 0.0;
  double z_min = 0.0, z_max = 0.0;

  double p1(double n) const;
  double p2(double n) const;
  double c3(double n, double temperature) const { return p1(n) * temperature + p2(n); }
  bool in_domain(double n, double temperature, double z0) const;

  /// Coefficients quoted for 87Rb nS states above Kubo graphene (E_F = 0.1 eV).
  /// The constant in p1 is kept with its quoted units of Hz m^3/K.
  static EmpiricalModel graphene_reference();
};

struct C3Sample {
  double n;
  double temperature;
  double c3;  // Hz m^3
};

/// Per-n linear fits in T, then p1 and p2 fitted in n. Every n needs >= 5
/// temperatures spanning >= 100 K; at least as many distinct n as basis terms.
EmpiricalModel fit_empirical_model(std::span<const C3Sample> samples, P1Basis basis = P1Basis::Sparse);

struct EmpiricalValue {
  double value = 0.0;  // Hz
  bool extrapolated = false;
};

/// -(p1(n) T + p2(n)) / z0^3. Points outside the fit domain are flagged, not refused.
EmpiricalValue empirical_potential(const EmpiricalModel& model, double n, double temperature, double z0);

/// Ordinary least squares line y = slope x + intercept with R^2.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace rydcp::analysis
