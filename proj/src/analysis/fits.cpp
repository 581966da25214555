#include "rydcp/analysis/fits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "rydcp/error.hpp"
#include "rydcp/numeric/least_squares.hpp"

namespace rydcp::analysis {

namespace {

void check_sizes(std::size_t a, std::size_t b, std::size_t minimum, const char* what) {
  if (a != b) throw InvalidArgument(std::string(what) + ": input lengths differ");
  if (a < minimum) {
    throw InvalidArgument(std::string(what) + ": needs at least " + std::to_string(minimum) + " samples");
  }
}

double rms(const Eigen::VectorXd& v) { return v.size() ? std::sqrt(v.squaredNorm() / v.size()) : 0.0; }

double eval_terms(const std::vector<EmpiricalModel::Term>& terms, double n) {
  double s = 0.0;
  for (const auto& t : terms) s += t.coefficient * std::pow(n, t.power);
  return s;
}

std::vector<EmpiricalModel::Term> fit_terms(const std::vector<double>& n, const std::vector<double>& y,
                                            const std::vector<int>& powers, const char* what) {
  if (n.size() < powers.size()) {
    throw InvalidArgument(std::string(what) + ": needs at least " + std::to_string(powers.size()) +
                          " distinct n values");
  }
  Eigen::MatrixXd a(static_cast<Eigen::Index>(n.size()), static_cast<Eigen::Index>(powers.size()));
  Eigen::VectorXd b(static_cast<Eigen::Index>(n.size()));
  for (std::size_t i = 0; i < n.size(); ++i) {
    for (std::size_t k = 0; k < powers.size(); ++k) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = std::pow(n[i], powers[k]);
    }
    b(static_cast<Eigen::Index>(i)) = y[i];
  }
  const auto sol = numeric::solve_least_squares(a, b);
  std::vector<EmpiricalModel::Term> out;
  for (std::size_t k = 0; k < powers.size(); ++k) {
    out.push_back({powers[k], sol.coefficients(static_cast<Eigen::Index>(k))});
  }
  return out;
}

}  // namespace

double PowerLawFit::operator()(double z0) const { return -coefficient / std::pow(z0, exponent); }

PowerLawFit fit_power_law(std::span<const double> z0, std::span<const double> potential) {
  check_sizes(z0.size(), potential.size(), 4, "power-law fit");
  const bool negative = potential[0] < 0.0;
  for (std::size_t i = 0; i < z0.size(); ++i) {
    if (!(z0[i] > 0.0)) throw InvalidArgument("power-law fit: distances must be positive");
    if (potential[i] == 0.0 || (potential[i] < 0.0) != negative) {
      throw InvalidArgument("power-law fit: potential changes sign (oscillating region cannot be fitted)");
    }
  }
  const auto m = static_cast<Eigen::Index>(z0.size());
  Eigen::MatrixXd a(m, 2);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = -std::log(z0[static_cast<std::size_t>(i)]);
    b(i) = std::log(std::abs(potential[static_cast<std::size_t>(i)]));
  }
  const auto sol = numeric::solve_least_squares(a, b);
  PowerLawFit fit;
  fit.coefficient = (negative ? 1.0 : -1.0) * std::exp(sol.coefficients(0));
  fit.exponent = sol.coefficients(1);
  fit.residual = rms(sol.residuals);
  const auto [lo, hi] = std::minmax_element(z0.begin(), z0.end());
  fit.z_min = *lo;
  fit.z_max = *hi;
  return fit;
}

double C3Fit::operator()(double n) const {
  if (form == C3Form::TwoTerm) return q1 * n * n * n * n + q2 * n * n * n;
  return amplitude * std::pow(n, exponent);
}

C3Fit fit_c3_vs_n(std::span<const double> n, std::span<const double> c3, C3Form form) {
  check_sizes(n.size(), c3.size(), 5, "C3(n) fit");
  const auto m = static_cast<Eigen::Index>(n.size());
  C3Fit fit;
  fit.form = form;
  Eigen::MatrixXd a(m, 2);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double ni = n[static_cast<std::size_t>(i)];
    const double ci = c3[static_cast<std::size_t>(i)];
    if (!(ni > 0.0)) throw InvalidArgument("C3(n) fit: n must be positive");
    if (form == C3Form::TwoTerm) {
      a(i, 0) = ni * ni * ni * ni;
      a(i, 1) = ni * ni * ni;
      b(i) = ci;
    } else {
      if (!(ci > 0.0)) throw InvalidArgument("C3(n) fit: single-power form needs positive C3");
      a(i, 0) = 1.0;
      a(i, 1) = std::log(ni);
      b(i) = std::log(ci);
    }
  }
  const auto sol = numeric::solve_least_squares(a, b);
  if (form == C3Form::TwoTerm) {
    fit.q1 = sol.coefficients(0);
    fit.q2 = sol.coefficients(1);
  } else {
    fit.amplitude = std::exp(sol.coefficients(0));
    fit.exponent = sol.coefficients(1);
  }
  fit.residual = rms(sol.residuals);
  return fit;
}

double EmpiricalModel::p1(double n) const { return eval_terms(p1_terms, n); }
double EmpiricalModel::p2(double n) const { return eval_terms(p2_terms, n); }

bool EmpiricalModel::in_domain(double n, double temperature, double z0) const {
  return n >= n_min && n <= n_max && temperature >= t_min && temperature <= t_max && z0 >= z_min && z0 <= z_max;
}

EmpiricalModel EmpiricalModel::graphene_reference() {
  EmpiricalModel m;
  m.p1_terms = {{7, -4e-25}, {0, -9.38e-15}};
  m.p2_terms = {{4, 1.866e-16}, {3, -1.614e-15}};
  m.n_min = 20;
  m.n_max = 40;
  m.t_min = 10;
  m.t_max = 300;
  m.z_min = 1e-6;
  m.z_max = 10e-6;
  return m;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  check_sizes(x.size(), y.size(), 2, "linear fit");
  const auto m = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(m, 2);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    a(i, 0) = x[static_cast<std::size_t>(i)];
    a(i, 1) = 1.0;
    b(i) = y[static_cast<std::size_t>(i)];
  }
  const auto sol = numeric::solve_least_squares(a, b);
  LinearFit fit;
  fit.slope = sol.coefficients(0);
  fit.intercept = sol.coefficients(1);
  const double mean = b.mean();
  const double ss_tot = (b.array() - mean).square().sum();
  fit.r_squared = ss_tot > 0.0 ? 1.0 - sol.residuals.squaredNorm() / ss_tot : 1.0;
  return fit;
}

EmpiricalModel fit_empirical_model(std::span<const C3Sample> samples, P1Basis basis) {
  if (samples.empty()) throw InvalidArgument("empirical fit: no samples");
  std::map<double, std::vector<std::pair<double, double>>> by_n;
  EmpiricalModel model;
  model.n_min = model.t_min = std::numeric_limits<double>::infinity();
  model.n_max = model.t_max = -std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    by_n[s.n].emplace_back(s.temperature, s.c3);
    model.n_min = std::min(model.n_min, s.n);
    model.n_max = std::max(model.n_max, s.n);
    model.t_min = std::min(model.t_min, s.temperature);
    model.t_max = std::max(model.t_max, s.temperature);
  }

  std::vector<double> ns, p1, p2;
  for (const auto& [n, pts] : by_n) {
    std::vector<double> t, c;
    for (const auto& [ti, ci] : pts) {
      t.push_back(ti);
      c.push_back(ci);
    }
    const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
    if (t.size() < 5 || *hi - *lo < 100.0) {
      throw InvalidArgument("empirical fit: n = " + std::to_string(n) +
                            " needs >= 5 temperatures spanning >= 100 K");
    }
    const auto line = fit_line(t, c);
    ns.push_back(n);
    p1.push_back(line.slope);
    p2.push_back(line.intercept);
  }

  std::vector<int> p1_powers{7, 0};
  if (basis == P1Basis::Full) p1_powers = {7, 6, 5, 4, 3, 2, 1, 0};
  model.p1_terms = fit_terms(ns, p1, p1_powers, "empirical fit p1(n)");
  model.p2_terms = fit_terms(ns, p2, {4, 3}, "empirical fit p2(n)");
  model.z_min = 0.0;
  model.z_max = std::numeric_limits<double>::infinity();
  return model;
}

EmpiricalValue empirical_potential(const EmpiricalModel& model, double n, double temperature, double z0) {
  if (!(z0 > 0.0)) throw InvalidArgument("empirical potential: z0 must be positive");
  return {-model.c3(n, temperature) / (z0 * z0 * z0), !model.in_domain(n, temperature, z0)};
}

}  // namespace rydcp::analysis
