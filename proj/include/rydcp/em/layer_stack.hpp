#pragma once

#include <complex>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rydcp/materials/material.hpp"

namespace rydcp::em {

using cd = std::complex<double>;

struct ReflectionPair {
  cd rs;
  cd rp;
};

/// Reflection at one complex frequency as a function of k_parallel (1/m).
class ReflectionSlice {
 public:
  explicit ReflectionSlice(cd omega);
  virtual ~ReflectionSlice() = default;

  ReflectionPair at(double k_parallel) const { return evaluate(k_parallel, k0_squared_ - k_parallel * k_parallel); }
  /// Same as at(), with the vacuum k_z^2 = (omega/c)^2 - k_par^2 supplied by the
  /// caller. Near the light line k_par alone cannot resolve k_z, so integrands
  /// pass -kappa^2 (evanescent) or k_perp^2 (propagating) directly.
  virtual ReflectionPair evaluate(double k_parallel, double vacuum_kz2) const = 0;

 protected:
  double k0_squared_;  // (omega/c)^2, negative on the imaginary axis
};

/// Anything that reflects plane waves arriving from the vacuum half-space.
class Reflector {
 public:
  virtual ~Reflector() = default;
  /// `temperature` is the environment temperature, used by sheets that have none.
  virtual std::unique_ptr<ReflectionSlice> slice(cd omega, double temperature) const = 0;
  /// True when every reflection coefficient vanishes identically.
  virtual bool is_vacuum() const { return false; }
  /// True when omega = 0 cannot be evaluated directly and the static limit
  /// must be approached from small imaginary frequency.
  virtual bool needs_static_limit() const { return true; }
};

/// Frequency-independent coefficients (r_s = -1, r_p = 1 is a perfect mirror).
class ConstantReflector : public Reflector {
 public:
  ConstantReflector(cd rs, cd rp) : rs_(rs), rp_(rp) {}
  static ConstantReflector perfect_mirror() { return {-1.0, 1.0}; }
  std::unique_ptr<ReflectionSlice> slice(cd omega, double temperature) const override;
  bool is_vacuum() const override { return rs_ == 0.0 && rp_ == 0.0; }
  bool needs_static_limit() const override { return false; }

 private:
  cd rs_;
  cd rp_;
};

inline constexpr double kInfiniteThickness = std::numeric_limits<double>::infinity();

struct Layer {
  materials::MaterialModel medium = materials::Dielectric{1.0};
  double thickness = kInfiniteThickness;  // m; infinite for the outer half-spaces
  double mu = 1.0;
  std::string name;
};

/// Planar stack, layer 0 is the vacuum half-space holding the atom, the last
/// layer is the substrate half-space. sheets[i] sits on the interface between
/// layers i and i+1.
class LayerStack : public Reflector {
 public:
  LayerStack() = default;
  LayerStack(std::vector<Layer> layers, std::vector<std::optional<materials::MaterialModel>> sheets);

  /// Vacuum on both sides, nothing in between.
  static LayerStack vacuum();
  /// A single sheet in vacuum.
  static LayerStack suspended_sheet(const materials::MaterialModel& sheet);
  /// Free-standing slab of `thickness` in vacuum.
  static LayerStack slab(const materials::MaterialModel& medium, double thickness);
  /// Sheet / dielectric spacer of thickness d / sheet, all in vacuum.
  static LayerStack double_sheet(const materials::MaterialModel& sheet, const materials::MaterialModel& spacer,
                                 double spacing);

  const std::vector<Layer>& layers() const { return layers_; }
  const std::vector<std::optional<materials::MaterialModel>>& sheets() const { return sheets_; }

  /// Throws InvalidArgument unless the stack satisfies its invariants.
  void validate() const;

  std::unique_ptr<ReflectionSlice> slice(cd omega, double temperature) const override;
  bool is_vacuum() const override;

  /// Convenience: coefficients at a single (k_parallel, omega).
  ReflectionPair reflection(double k_parallel, cd omega, double temperature) const;

  std::string describe() const;

 private:
  std::vector<Layer> layers_;
  std::vector<std::optional<materials::MaterialModel>> sheets_;
};

/// Single-interface coefficients with a conducting sheet of conductivity
/// sigma, used by the stack recursion. k1, k2 are normal wavenumbers.
struct InterfaceCoefficients {
  cd r12;
  cd r21;
  cd t12t21;
};
InterfaceCoefficients interface_p(cd eps1, cd eps2, cd k1, cd k2, cd sigma, cd omega);
InterfaceCoefficients interface_s(cd mu1, cd mu2, cd k1, cd k2, cd sigma, cd omega);

/// Normal wavenumber sqrt(eps mu omega^2/c^2 - k^2) on the branch Im >= 0.
cd normal_wavenumber(cd eps, cd mu, cd omega, double k_parallel);
/// sqrt((eps mu - 1) k0^2 + vacuum_kz2) on the Im k >= 0 branch.
cd normal_wavenumber_from_vacuum(cd eps, cd mu, double k0_squared, double vacuum_kz2);

}  // namespace rydcp::em
