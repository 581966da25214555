#include "rydcp/atomic/state.hpp"

#include <cctype>
#include <cstdlib>
#include <string_view>

#include "rydcp/error.hpp"

namespace rydcp::atomic {

namespace {
constexpr std::string_view kLetters = "SPDFGHIKLMNOQRTUV";
}

char orbital_letter(int l) {
  if (l < 0 || l >= static_cast<int>(kLetters.size())) return '?';
  return kLetters[static_cast<std::size_t>(l)];
}

bool AtomicState::is_valid() const noexcept {
  if (n < 1 || l < 0 || l >= n) return false;
  if (two_j != 2 * l + 1 && two_j != 2 * l - 1) return false;
  if (two_j < 1) return false;
  if (std::abs(two_m) > two_j || (two_m + two_j) % 2 != 0) return false;
  return true;
}

void AtomicState::validate() const {
  if (!is_valid()) throw InvalidArgument("invalid atomic state " + label());
}

std::string AtomicState::label() const {
  return std::to_string(n) + orbital_letter(l) + std::to_string(two_j) + "/2";
}

AtomicState parse_state(const std::string& text) {
  std::size_t pos = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == 0 || pos == text.size()) throw InvalidArgument("cannot parse atomic state '" + text + "'");
  const int n = std::stoi(text.substr(0, pos));
  const auto letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text[pos])));
  const auto idx = kLetters.find(letter);
  if (idx == std::string_view::npos) throw InvalidArgument("unknown orbital letter in '" + text + "'");
  const int l = static_cast<int>(idx);
  int two_j = l == 0 ? 1 : 2 * l + 1;
  const std::string rest = text.substr(pos + 1);
  if (!rest.empty()) {
    const auto slash = rest.find('/');
    if (slash == std::string::npos || rest.substr(slash + 1) != "2") {
      throw InvalidArgument("expected j written as '<odd>/2' in '" + text + "'");
    }
    two_j = std::stoi(rest.substr(0, slash));
  }
  AtomicState s{n, l, two_j, 1};
  s.validate();
  return s;
}

}  // namespace rydcp::atomic
