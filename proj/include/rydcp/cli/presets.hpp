#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rydcp/cli/config.hpp"

namespace rydcp::cli {

/// Scan presets compiled into the binary from presets/*.yaml.
std::vector<std::string> preset_names();
/// Raw YAML of a scan preset, or of a stack file under presets/stacks.
std::optional<std::string> preset_text(const std::string& name);
/// Stack file shipped with the presets, looked up by "stacks/<name>.yaml" or "<name>".
std::optional<std::string> embedded_stack(const std::string& name);

/// `name` expands to the preset of that name plus every "name-*" preset,
/// or to every preset starting with `name` when there is no exact match
/// (so "fig6" gives fig6a and fig6b). Throws InvalidArgument when nothing matches.
std::vector<ScanConfig> expand_preset(const std::string& name);

}  // namespace rydcp::cli
