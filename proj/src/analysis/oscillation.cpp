#include "rydcp/analysis/oscillation.hpp"

#include "rydcp/error.hpp"

namespace rydcp::analysis {

std::vector<double> zero_crossings(std::span<const double> z, std::span<const double> u) {
  if (z.size() != u.size()) throw InvalidArgument("zero crossings: input lengths differ");
  std::vector<double> out;
  int last_sign = 0;
  double last_z = 0.0, last_u = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i > 0 && !(z[i] > z[i - 1])) throw InvalidArgument("zero crossings: distances must increase");
    const int sign = (u[i] > 0.0) - (u[i] < 0.0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) {
      if (i > 0 && u[i - 1] == 0.0) {
        out.push_back(z[i - 1]);
      } else {
        out.push_back(last_z + (z[i] - last_z) * last_u / (last_u - u[i]));
      }
    }
    last_sign = sign;
    last_z = z[i];
    last_u = u[i];
  }
  return out;
}

OscillationResult extract_oscillation_wavelength(std::span<const double> z, std::span<const double> u,
                                                 double lambda_start) {
  if (!(lambda_start > 0.0)) throw InvalidArgument("oscillation: start wavelength must be positive");
  OscillationResult r;
  r.crossings = zero_crossings(z, u);
  if (r.crossings.empty()) throw InvalidArgument("oscillation: trace never changes sign");
  r.first_zero_crossing = r.crossings.front();
  std::size_t i = 0;
  while (i < r.crossings.size() && r.crossings[i] < 0.5 * lambda_start) ++i;
  if (i + 2 >= r.crossings.size()) {
    throw InvalidArgument("oscillation: no full cycle sampled beyond half the start wavelength");
  }
  r.cycle_start = r.crossings[i];
  r.wavelength = r.crossings[i + 2] - r.crossings[i];
  return r;
}

}  // namespace rydcp::analysis
