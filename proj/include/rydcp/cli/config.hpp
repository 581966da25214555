#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rydcp/em/layer_stack.hpp"
#include "rydcp/materials/material.hpp"

namespace rydcp::cli {

/// Config problem with the source location it was found at.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& what);
  const std::string& source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

inline constexpr int kConfigVersion = 1;

/// Stack description as read from a file. Items run from the atom side down:
/// `sheet` entries sit on the current interface, `layer` entries are finite
/// slabs and `substrate` closes the stack (vacuum when omitted).
struct StackSpec {
  std::string name;
  em::LayerStack stack;
};

StackSpec parse_stack(const std::string& text, const std::string& source = "<stack>");
StackSpec load_stack_file(const std::string& path);
/// A preset material name (graphene-kubo, gold-drude, ...) or a stack file path.
StackSpec resolve_stack(const std::string& name_or_path);

enum class ScanKind { Potential, Conductivity, Polarizability };

struct Axis {
  std::string name;  // z0, z0_lambda, T, n, ef, ef_top, ef_bottom, d, omega, q, q_over_kf, hw_over_ef
  std::vector<double> values;
};

struct ScanConfig {
  std::string name;
  ScanKind kind = ScanKind::Potential;
  std::string stack = "graphene-kubo";  // preset name or file path
  std::string stack_base_dir;           // relative stack paths resolve against this
  std::optional<std::string> model;     // kubo | nonlocal, overrides graphene sheets
  int n = 30;
  double z0 = 10e-6;
  double temperature = 10.0;
  std::optional<double> fermi_energy_ev;
  std::optional<double> spacing;  // d override for the single finite layer
  double omega = 9.88e11;         // conductivity scans
  double q = 0.0;                 // conductivity scans, 0 = local limit
  double gamma = 4e12;
  double tolerance = 1e-8;
  int basis_half_width = 15;
  bool per_transition = false;
  bool plot = true;
  std::string output;
  std::vector<Axis> axes;

  void validate() const;
};

ScanConfig parse_scan(const std::string& text, const std::string& source = "<scan>");
ScanConfig load_scan_file(const std::string& path);

/// Axis grid from explicit values or {start, stop, count, spacing: linear|log}.
std::vector<double> make_grid(double start, double stop, int count, bool logarithmic);

}  // namespace rydcp::cli
