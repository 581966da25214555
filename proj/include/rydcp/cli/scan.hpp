#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rydcp/cli/config.hpp"

namespace rydcp::cli {

/// Rows are pre-formatted so that output is byte-identical across runs.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws when absent
  bool has_column(const std::string& name) const;
};

struct ScanOptions {
  int workers = 1;
  bool timing = false;  // adds a wall_ms column (breaks byte-identical output)
  bool joules = false;  // energies in J instead of Hz
  std::function<void(std::size_t done, std::size_t total)> progress;
};

struct ScanResult {
  Table table;
  Table transitions;  // filled when per_transition is set
  std::size_t failures = 0;
};

ScanResult run_scan(const ScanConfig& config, const ScanOptions& options = {});

void write_csv(std::ostream& out, const Table& t);
void write_csv_file(const std::string& path, const Table& t);
Table read_csv(std::istream& in);
Table read_csv_file(const std::string& path);

/// Self-contained matplotlib script that plots `csv_path` the way the scan is laid out.
std::string plot_script(const ScanConfig& config, const std::string& csv_path);

/// Copy of `base` with graphene sheets switched to `model`, the first/last
/// sheet set to ef_top/ef_bottom (eV) and the single finite layer set to `spacing`.
em::LayerStack apply_stack_overrides(const em::LayerStack& base, const std::optional<std::string>& model,
                                     const std::optional<double>& ef_top, const std::optional<double>& ef_bottom,
                                     const std::optional<double>& spacing);

/// Shortest round-trip formatting used for every number in the tables.
std::string format_number(double v);

}  // namespace rydcp::cli
