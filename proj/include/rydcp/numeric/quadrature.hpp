#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rydcp/error.hpp"

namespace rydcp::numeric {

struct QuadOptions {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  int max_intervals = 4000;
};

template <class T>
struct QuadResult {
  T value;
  double error = 0.0;
  int intervals = 0;
  int evaluations = 0;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod abscissae and weights on [-1, 1].
extern const std::array<double, 8> kronrod_nodes;
extern const std::array<double, 8> kronrod_weights;
extern const std::array<double, 4> gauss_weights;

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
template <class V, std::size_t N>
double magnitude(const std::array<V, N>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, magnitude(x));
  return m;
}

inline void accumulate(double& acc, double v, double w) { acc += w * v; }
inline void accumulate(std::complex<double>& acc, const std::complex<double>& v, double w) {
  acc += w * v;
}
template <class V, std::size_t N>
void accumulate(std::array<V, N>& acc, const std::array<V, N>& v, double w) {
  for (std::size_t i = 0; i < N; ++i) accumulate(acc[i], v[i], w);
}

template <class T>
T zero() {
  if constexpr (std::is_arithmetic_v<T>) {
    return T{0};
  } else {
    return T{};
  }
}

template <class T>
T difference(const T& a, const T& b) {
  T d = a;
  accumulate(d, b, -1.0);
  return d;
}

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
};

template <class T, class F>
Panel<T> kronrod_panel(F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T kronrod = zero<T>();
  T gauss = zero<T>();
  const T fc = f(mid);
  accumulate(kronrod, fc, kronrod_weights[7]);
  accumulate(gauss, fc, gauss_weights[3]);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kronrod_nodes[i];
    const T f1 = f(mid - dx);
    const T f2 = f(mid + dx);
    accumulate(kronrod, f1, kronrod_weights[i]);
    accumulate(kronrod, f2, kronrod_weights[i]);
    if (i % 2 == 1) {
      accumulate(gauss, f1, gauss_weights[i / 2]);
      accumulate(gauss, f2, gauss_weights[i / 2]);
    }
  }
  T scaled = zero<T>();
  accumulate(scaled, kronrod, half);
  T gscaled = zero<T>();
  accumulate(gscaled, gauss, half);
  return {a, b, scaled, magnitude(difference(scaled, gscaled))};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature over consecutive panels
/// [breaks[0], breaks[1]], ..., the panel with the largest error estimate is
/// bisected until the summed estimate meets max(abs_tol, rel_tol * |I|).
///
/// The result does not depend on evaluation order, so repeated calls are
/// bit-identical. Throws ConvergenceError (tagged) on exhaustion.
template <class T, class F>
QuadResult<T> integrate(F&& f, std::span<const double> breaks, const QuadOptions& opt,
                        std::string_view tag = "integral") {
  if (breaks.size() < 2) throw InvalidArgument("integrate: need at least two break points");
  std::vector<detail::Panel<T>> heap;
  heap.reserve(64);
  auto cmp = [](const detail::Panel<T>& x, const detail::Panel<T>& y) { return x.error < y.error; };
  int evaluations = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] == breaks[i]) continue;
    heap.push_back(detail::kronrod_panel<T>(f, breaks[i], breaks[i + 1]));
    evaluations += 15;
  }
  std::make_heap(heap.begin(), heap.end(), cmp);

  auto totals = [&heap]() {
    T sum = detail::zero<T>();
    double err = 0.0;
    for (const auto& p : heap) {
      detail::accumulate(sum, p.value, 1.0);
      err += p.error;
    }
    return std::pair{sum, err};
  };

  auto [sum, err] = totals();
  while (err > std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(sum))) {
    if (static_cast<int>(heap.size()) >= opt.max_intervals || heap.empty()) {
      throw ConvergenceError(std::string(tag) + ": adaptive quadrature did not converge (error estimate " +
                                 std::to_string(err) + ")",
                             std::string(tag), err);
    }
    std::pop_heap(heap.begin(), heap.end(), cmp);
    const auto worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      throw ConvergenceError(std::string(tag) + ": interval collapsed below machine resolution",
                             std::string(tag), err);
    }
    heap.push_back(detail::kronrod_panel<T>(f, worst.a, mid));
    std::push_heap(heap.begin(), heap.end(), cmp);
    heap.push_back(detail::kronrod_panel<T>(f, mid, worst.b));
    std::push_heap(heap.begin(), heap.end(), cmp);
    evaluations += 30;
    // Re-summing keeps the result independent of accumulated round-off order.
    std::tie(sum, err) = totals();
  }
  return {sum, err, static_cast<int>(heap.size()), evaluations};
}

template <class T, class F>
QuadResult<T> integrate(F&& f, double a, double b, const QuadOptions& opt,
                        std::string_view tag = "integral") {
  const std::array<double, 2> br{a, b};
  return integrate<T>(std::forward<F>(f), std::span<const double>(br), opt, tag);
}

}  // namespace rydcp::numeric
