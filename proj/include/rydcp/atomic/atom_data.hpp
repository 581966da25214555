#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <utility>

namespace rydcp::atomic {

struct DefectSeries {
  double delta0 = 0.0;
  double delta2 = 0.0;
};

/// Rydberg-Ritz quantum defects per (l, 2j) series. Series that are not
/// tabulated have zero defect.
class QuantumDefectTable {
 public:
  void set(int l, int two_j, DefectSeries series) { table_[{l, two_j}] = series; }
  DefectSeries series(int l, int two_j) const;
  bool contains(int l, int two_j) const { return table_.count({l, two_j}) != 0; }
  std::size_t size() const { return table_.size(); }

  /// delta0 + delta2 / (n - delta2)^2
  double defect(int l, int two_j, int n) const;

  const std::map<std::pair<int, int>, DefectSeries>& entries() const { return table_; }

 private:
  std::map<std::pair<int, int>, DefectSeries> table_;
};

/// Parametric l-dependent core potential of an alkali atom with a
/// core-polarization term cut off at radius rc (atomic units).
struct CorePotential {
  int nuclear_charge = 37;
  double alpha_core = 9.0760;
  std::array<double, 4> a1{};
  std::array<double, 4> a2{};
  std::array<double, 4> a3{};
  std::array<double, 4> a4{};
  std::array<double, 4> rc{};
  bool spin_orbit = true;

  /// V(r) in Hartree for r in Bohr radii.
  double operator()(int l, int two_j, double r) const;
};

struct AtomData {
  int version = 1;
  std::string species = "87Rb";
  double mass_amu = 86.909180527;
  QuantumDefectTable defects;
  CorePotential core;
  /// Lowest principal quantum number not occupied by the core, per l
  /// (index l; values beyond the array use l + 1).
  std::array<int, 4> lowest_n{5, 5, 4, 4};

  double reduced_mass_ratio() const;
  int lowest_allowed_n(int l) const;
};

/// 87Rb: defects for S1/2, P1/2, P3/2, D3/2, D5/2 and the standard
/// four-parameter core potential.
AtomData rb87_defaults();

/// Reads the versioned "key = value" data file format (see data/rb87.dat).
AtomData load_atom_data(const std::filesystem::path& path);

/// Directory holding data files: $RYDCP_DATA_DIR if set, else `fallback`.
std::filesystem::path data_directory(const std::filesystem::path& fallback = {});

}  // namespace rydcp::atomic
