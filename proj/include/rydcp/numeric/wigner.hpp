#pragma once

// Angular-momentum coupling coefficients. All arguments are passed as twice
// their physical value so half-integers stay exact: j = 1/2 is written 1.

namespace rydcp::numeric {

double wigner_3j(int two_j1, int two_j2, int two_j3, int two_m1, int two_m2, int two_m3);

double wigner_6j(int two_j1, int two_j2, int two_j3, int two_j4, int two_j5, int two_j6);

}  // namespace rydcp::numeric
