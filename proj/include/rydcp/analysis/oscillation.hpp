#pragma once

#include <span>
#include <vector>

namespace rydcp::analysis {

struct OscillationResult {
  double wavelength = 0.0;          // m
  double cycle_start = 0.0;         // first crossing of the measured cycle
  double first_zero_crossing = 0.0; // first sign change anywhere in the trace
  std::vector<double> crossings;    // all sign changes, linearly interpolated
};

/// Sign changes of a sampled trace, located by linear interpolation. Exact zeros
/// count once.
std::vector<double> zero_crossings(std::span<const double> z, std::span<const double> u);

/// Length of the first full cycle (three consecutive crossings) starting after
/// z = lambda_start / 2. Throws InvalidArgument when no such cycle is sampled.
OscillationResult extract_oscillation_wavelength(std::span<const double> z, std::span<const double> u,
                                                 double lambda_start);

}  // namespace rydcp::analysis
