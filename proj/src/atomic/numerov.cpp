#include "rydcp/atomic/numerov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rydcp/constants.hpp"
#include "rydcp/error.hpp"

namespace rydcp::atomic {

double RadialWavefunction::norm() const {
  double s = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double a = values[i - 1] * grid[i - 1];
    const double b = values[i] * grid[i];
    s += 0.5 * (grid[i] - grid[i - 1]) * (a * a + b * b);
  }
  return s;
}

int RadialWavefunction::node_count() const {
  int nodes = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if ((values[i - 1] < 0.0) != (values[i] < 0.0) && values[i] != 0.0) ++nodes;
  }
  return nodes;
}

double RadialWavefunction::expectation(int power) const {
  return radial_integral(*this, *this, power);
}

RadialWavefunction solve_radial(const AtomicState& state, double energy, double mass_ratio,
                                const std::function<double(double)>& potential,
                                const GridSpec& spec) {
  state.validate();
  if (!(spec.step > 0.0)) throw InvalidArgument("radial grid step must be positive");
  if (energy >= 0.0) throw InvalidArgument("radial solver needs a bound-state energy");

  const double h = spec.step;
  const double r_out = spec.outer_scale * 2.0 * state.n * (state.n + 15.0);
  const auto last = static_cast<std::size_t>(std::ceil(std::sqrt(r_out) / h));
  const auto first =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(spec.r_floor) / h)));
  if (last < first + 8) throw InvalidArgument("radial grid has too few points");

  const double centrifugal = (2.0 * state.l + 0.5) * (2.0 * state.l + 1.5);
  const std::size_t count = last - first + 1;
  std::vector<double> g(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double x = static_cast<double>(first + k) * h;
    const double r = x * x;
    g[k] = 8.0 * mass_ratio * r * (potential(r) - energy) + centrifugal / r;
  }

  std::vector<double> chi(count, 0.0);
  const double f = h * h / 12.0;
  std::size_t top = count - 1;
  chi[top] = 1e-10;
  chi[top - 1] = chi[top] * std::exp(h * std::sqrt(std::max(g[top], 0.0)));

  bool passed_allowed = false;
  std::size_t stop = 0;  // index of the innermost kept point
  for (std::size_t k = top - 1; k-- > 0;) {
    const std::size_t i = k + 1;  // chi[i] and chi[i+1] known, compute chi[k]
    if (g[i] < 0.0) {
      passed_allowed = true;
      const double points = 2.0 * constants::pi / (std::sqrt(-g[i]) * h);
      if (points < spec.min_points_per_oscillation) {
        std::ostringstream msg;
        msg << "Numerov mesh too coarse for " << state.label() << ": " << points
            << " points per oscillation at r = " << std::pow((first + i) * h, 2) << " a0 (step " << h
            << ", need " << spec.min_points_per_oscillation << ")";
        throw ConvergenceError(msg.str(), "numerov.resolution", points);
      }
    }
    chi[k] = (2.0 * (1.0 + 5.0 * f * g[i]) * chi[i] - (1.0 - f * g[i + 1]) * chi[i + 1]) /
             (1.0 - f * g[k]);
    if (std::abs(chi[k]) > 1e200) {
      for (std::size_t m = k; m < count; ++m) chi[m] *= 1e-200;
    }
    if (passed_allowed && g[k] > 0.0 && std::abs(chi[k]) > std::abs(chi[i])) {
      stop = i;
      break;
    }
  }
  // The divergent solution can cross zero before its growth is detected;
  // the regular one has no node under the inner barrier.
  for (std::size_t k = stop; k + 1 < count && g[k] > 0.0; ++k) {
    if ((chi[k] < 0.0) != (chi[k + 1] < 0.0)) stop = k + 1;
  }

  RadialWavefunction wf;
  wf.state = state;
  wf.step = h;
  wf.first_index = first + stop;
  wf.chi.assign(chi.begin() + static_cast<std::ptrdiff_t>(stop), chi.end());
  const std::size_t kept = wf.chi.size();
  wf.grid.resize(kept);
  wf.values.resize(kept);
  for (std::size_t m = 0; m < kept; ++m) {
    const double x = static_cast<double>(wf.first_index + m) * h;
    wf.grid[m] = x * x;
    wf.values[m] = wf.chi[m] / (x * std::sqrt(x));
  }
  const double n2 = wf.norm();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw ConvergenceError("radial wavefunction of " + state.label() + " could not be normalized",
                           "numerov.norm", n2);
  }
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& v : wf.values) v *= scale;
  for (auto& v : wf.chi) v *= scale;
  return wf;
}

double radial_integral(const RadialWavefunction& a, const RadialWavefunction& b, int power) {
  if (a.step != b.step) throw InvalidArgument("radial_integral: wavefunctions use different meshes");
  const std::size_t lo = std::max(a.first_index, b.first_index);
  const std::size_t hi =
      std::min(a.first_index + a.chi.size(), b.first_index + b.chi.size());
  if (hi <= lo + 1) return 0.0;
  // u_a u_b r^power dr with u = x^1/2 chi, r = x^2, dr = 2x dx
  const double h = a.step;
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double x = static_cast<double>(i) * h;
    const double w = (i == lo || i + 1 == hi) ? 0.5 : 1.0;
    s += w * a.chi[i - a.first_index] * b.chi[i - b.first_index] * std::pow(x, 2 * power + 2);
  }
  return 2.0 * h * s;
}

}  // namespace rydcp::atomic
