#include "rydcp/cli/presets.hpp"

#include <algorithm>
#include <string_view>
#include <utility>

#include "rydcp/error.hpp"

namespace rydcp::cli {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_presets();
}

namespace {

bool is_stack(std::string_view key) { return key.rfind("stacks/", 0) == 0; }

std::string strip_yaml(std::string_view key) {
  std::string s(key);
  if (s.size() > 5 && s.compare(s.size() - 5, 5, ".yaml") == 0) s.resize(s.size() - 5);
  return s;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [key, text] : detail::embedded_presets()) {
    if (!is_stack(key)) out.push_back(strip_yaml(key));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::string> preset_text(const std::string& name) {
  for (const auto& [key, text] : detail::embedded_presets()) {
    if (strip_yaml(key) == name || key == name) return std::string(text);
  }
  return std::nullopt;
}

std::optional<std::string> embedded_stack(const std::string& name) {
  for (const auto& [key, text] : detail::embedded_presets()) {
    if (!is_stack(key)) continue;
    if (key == name || strip_yaml(key) == name || strip_yaml(key.substr(7)) == name) return std::string(text);
  }
  return std::nullopt;
}

std::vector<ScanConfig> expand_preset(const std::string& name) {
  const auto names = preset_names();
  std::vector<std::string> chosen;
  const bool exact = std::find(names.begin(), names.end(), name) != names.end();
  for (const auto& n : names) {
    const bool take = exact ? (n == name || n.rfind(name + "-", 0) == 0) : n.rfind(name, 0) == 0;
    if (take) chosen.push_back(n);
  }
  if (chosen.empty()) throw InvalidArgument("unknown preset '" + name + "' (see `rydcp preset --list`)");
  std::vector<ScanConfig> out;
  for (const auto& n : chosen) {
    auto c = parse_scan(*preset_text(n), "preset:" + n);
    if (c.output.empty()) c.output = n + ".csv";
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace rydcp::cli
