#include "rydcp/numeric/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

#include "rydcp/error.hpp"

namespace rydcp::numeric {
namespace {

constexpr int kMaxFactorial = 170;

const std::array<double, kMaxFactorial + 1>& factorials() {
  static const auto table = [] {
    std::array<double, kMaxFactorial + 1> t{};
    t[0] = 1.0;
    for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table;
}

double fact(int n) {
  if (n < 0 || n > kMaxFactorial) throw InvalidArgument("wigner: factorial argument out of range");
  return factorials()[n];
}

bool triangle(int a, int b, int c) {
  return c <= a + b && c >= std::abs(a - b) && (a + b + c) % 2 == 0;
}

// Delta(abc) with doubled arguments.
double triangle_coefficient(int a, int b, int c) {
  return fact((a + b - c) / 2) * fact((a - b + c) / 2) * fact((-a + b + c) / 2) /
         fact((a + b + c) / 2 + 1);
}

}  // namespace

double wigner_3j(int j1, int j2, int j3, int m1, int m2, int m3) {
  if (m1 + m2 + m3 != 0) return 0.0;
  if (!triangle(j1, j2, j3)) return 0.0;
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0;
  if ((j1 + m1) % 2 || (j2 + m2) % 2 || (j3 + m3) % 2) return 0.0;

  const int kmin = std::max({0, (j2 - j3 - m1) / 2, (j1 - j3 + m2) / 2});
  const int kmax = std::min({(j1 + j2 - j3) / 2, (j1 - m1) / 2, (j2 + m2) / 2});
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double term = fact(k) * fact((j1 + j2 - j3) / 2 - k) * fact((j1 - m1) / 2 - k) *
                        fact((j2 + m2) / 2 - k) * fact((j3 - j2 + m1) / 2 + k) *
                        fact((j3 - j1 - m2) / 2 + k);
    sum += (k % 2 ? -1.0 : 1.0) / term;
  }
  const double pre = std::sqrt(triangle_coefficient(j1, j2, j3) * fact((j1 + m1) / 2) *
                               fact((j1 - m1) / 2) * fact((j2 + m2) / 2) * fact((j2 - m2) / 2) *
                               fact((j3 + m3) / 2) * fact((j3 - m3) / 2));
  const int phase = (j1 - j2 - m3) / 2;
  return ((phase % 2 == 0) ? 1.0 : -1.0) * pre * sum;
}

double wigner_6j(int j1, int j2, int j3, int j4, int j5, int j6) {
  if (!triangle(j1, j2, j3) || !triangle(j1, j5, j6) || !triangle(j4, j2, j6) ||
      !triangle(j4, j5, j3)) {
    return 0.0;
  }
  const int a1 = (j1 + j2 + j3) / 2;
  const int a2 = (j1 + j5 + j6) / 2;
  const int a3 = (j4 + j2 + j6) / 2;
  const int a4 = (j4 + j5 + j3) / 2;
  const int b1 = (j1 + j2 + j4 + j5) / 2;
  const int b2 = (j2 + j3 + j5 + j6) / 2;
  const int b3 = (j3 + j1 + j6 + j4) / 2;

  const int kmin = std::max({a1, a2, a3, a4});
  const int kmax = std::min({b1, b2, b3});
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double denom = fact(k - a1) * fact(k - a2) * fact(k - a3) * fact(k - a4) *
                         fact(b1 - k) * fact(b2 - k) * fact(b3 - k);
    sum += (k % 2 ? -1.0 : 1.0) * fact(k + 1) / denom;
  }
  const double pre = std::sqrt(triangle_coefficient(j1, j2, j3) * triangle_coefficient(j1, j5, j6) *
                               triangle_coefficient(j4, j2, j6) * triangle_coefficient(j4, j5, j3));
  return pre * sum;
}

}  // namespace rydcp::numeric
