#pragma once

#include <compare>
#include <string>

namespace rydcp::atomic {

/// |n l j m> of the valence electron. Half-integer quantum numbers are held
/// doubled (two_j = 2j, two_m = 2m) so that they stay exact integers.
struct AtomicState {
  int n = 1;
  int l = 0;
  int two_j = 1;
  int two_m = 1;

  double j() const noexcept { return 0.5 * two_j; }
  double m() const noexcept { return 0.5 * two_m; }

  /// Throws InvalidArgument unless n >= 1, 0 <= l < n, j = l +- 1/2 >= 1/2, |m| <= j.
  void validate() const;
  bool is_valid() const noexcept;

  /// Same level with m dropped (m set to +1/2 or the nearest allowed value).
  AtomicState level() const noexcept { return {n, l, two_j, 1}; }

  /// Spectroscopic label such as "30S1/2" or "29P3/2".
  std::string label() const;

  auto operator<=>(const AtomicState&) const = default;
};

inline AtomicState s_state(int n) { return {n, 0, 1, 1}; }

/// Parses "30S", "30S1/2", "29P3/2", "28D5/2" (m defaults to +1/2).
AtomicState parse_state(const std::string& text);

char orbital_letter(int l);

}  // namespace rydcp::atomic
