#include "rydcp/em/layer_stack.hpp"

#include <cmath>
#include <sstream>

#include "rydcp/constants.hpp"
#include "rydcp/error.hpp"

namespace rydcp::em {

namespace {

constexpr cd I(0.0, 1.0);

class ConstantSlice : public ReflectionSlice {
 public:
  ConstantSlice(cd omega, cd rs, cd rp) : ReflectionSlice(omega), r_{rs, rp} {}
  ReflectionPair evaluate(double, double) const override { return r_; }

 private:
  ReflectionPair r_;
};

class StackSlice : public ReflectionSlice {
 public:
  StackSlice(const LayerStack& stack, cd omega, double temperature)
      : ReflectionSlice(omega), stack_(stack), omega_(omega), temperature_(temperature) {
    const auto& layers = stack.layers();
    eps_.reserve(layers.size());
    for (const auto& l : layers) eps_.push_back(materials::permittivity(l.medium, omega));
    for (const auto& s : stack.sheets()) {
      if (!s) {
        sigma_.push_back(0.0);
      } else if (materials::is_nonlocal(*s)) {
        sigma_.push_back(std::nullopt);
      } else {
        sigma_.push_back(materials::sheet_conductivity(*s, omega, 0.0, temperature));
      }
    }
    imaginary_axis_ = omega.real() == 0.0;
  }

  ReflectionPair evaluate(double k_parallel, double vacuum_kz2) const override {
    const auto& layers = stack_.layers();
    const std::size_t count = layers.size();
    std::vector<cd> k(count);
    for (std::size_t j = 0; j < count; ++j) {
      k[j] = normal_wavenumber_from_vacuum(eps_[j], layers[j].mu, k0_squared_, vacuum_kz2);
    }
    cd rs = 0.0;
    cd rp = 0.0;
    for (std::size_t i = count - 1; i-- > 0;) {
      cd sigma = 0.0;
      if (sigma_[i]) {
        sigma = *sigma_[i];
      } else {
        sigma = materials::sheet_conductivity(*stack_.sheets()[i], omega_, k_parallel, temperature_);
      }
      const auto p = interface_p(eps_[i], eps_[i + 1], k[i], k[i + 1], sigma, omega_);
      const auto s = interface_s(layers[i].mu, layers[i + 1].mu, k[i], k[i + 1], sigma, omega_);
      if (i + 2 == count) {
        rs = s.r12;
        rp = p.r12;
        continue;
      }
      const cd phase = std::exp(2.0 * I * k[i + 1] * layers[i + 1].thickness);
      const cd xs = rs * phase;
      const cd xp = rp * phase;
      rs = s.r12 + s.t12t21 * xs / (1.0 - s.r21 * xs);
      rp = p.r12 + p.t12t21 * xp / (1.0 - p.r21 * xp);
    }
    if (imaginary_axis_ && (std::abs(rs) > 1.0 + 1e-9 || std::abs(rp) > 1.0 + 1e-9)) {
      std::ostringstream msg;
      msg << "reflection coefficient exceeds 1 on the imaginary axis (|r_s| = " << std::abs(rs)
          << ", |r_p| = " << std::abs(rp) << " at xi = " << omega_.imag() << " rad/s, k = " << k_parallel
          << " 1/m): wrong square-root branch";
      throw Error(msg.str());
    }
    return {rs, rp};
  }

 private:
  const LayerStack& stack_;
  cd omega_;
  double temperature_;
  std::vector<cd> eps_;
  std::vector<std::optional<cd>> sigma_;
  bool imaginary_axis_ = false;
};

}  // namespace

ReflectionSlice::ReflectionSlice(cd omega) {
  const cd w = omega / constants::c;
  k0_squared_ = (w * w).real();
}

cd normal_wavenumber_from_vacuum(cd eps, cd mu, double k0_squared, double vacuum_kz2) {
  const cd contrast = eps * mu - 1.0;
  cd k = std::sqrt(contrast == 0.0 ? cd(vacuum_kz2) : contrast * k0_squared + vacuum_kz2);
  if (k.imag() < 0.0 || (k.imag() == 0.0 && k.real() < 0.0)) k = -k;
  return k;
}

cd normal_wavenumber(cd eps, cd mu, cd omega, double k_parallel) {
  const cd w = omega / constants::c;
  cd k = std::sqrt(eps * mu * w * w - k_parallel * k_parallel);
  if (k.imag() < 0.0 || (k.imag() == 0.0 && k.real() < 0.0)) k = -k;
  return k;
}

InterfaceCoefficients interface_p(cd eps1, cd eps2, cd k1, cd k2, cd sigma, cd omega) {
  const cd a = eps2 * k1;
  const cd b = eps1 * k2;
  const cd s = sigma == 0.0 ? cd(0.0) : sigma * k1 * k2 / (constants::epsilon0 * omega);
  const cd d = a + b + s;
  InterfaceCoefficients c;
  c.r12 = (a - b + s) / d;
  c.r21 = (b - a + s) / d;
  c.t12t21 = c.r12 * c.r21 + (a + b - s) / d;
  return c;
}

InterfaceCoefficients interface_s(cd mu1, cd mu2, cd k1, cd k2, cd sigma, cd omega) {
  const cd a1 = k1 / mu1;
  const cd a2 = k2 / mu2;
  const cd s = constants::mu0 * omega * sigma;
  const cd d = a1 + a2 + s;
  InterfaceCoefficients c;
  c.r12 = (a1 - a2 - s) / d;
  c.r21 = (a2 - a1 - s) / d;
  c.t12t21 = c.r12 * c.r21 + (a1 + a2 - s) / d;
  return c;
}

std::unique_ptr<ReflectionSlice> ConstantReflector::slice(cd omega, double) const {
  return std::make_unique<ConstantSlice>(omega, rs_, rp_);
}

LayerStack::LayerStack(std::vector<Layer> layers, std::vector<std::optional<materials::MaterialModel>> sheets)
    : layers_(std::move(layers)), sheets_(std::move(sheets)) {
  if (sheets_.empty() && layers_.size() >= 2) sheets_.resize(layers_.size() - 1);
  validate();
}

LayerStack LayerStack::vacuum() {
  return LayerStack({Layer{materials::Dielectric{1.0}, kInfiniteThickness, 1.0, "vacuum"},
                     Layer{materials::Dielectric{1.0}, kInfiniteThickness, 1.0, "vacuum"}},
                    {std::nullopt});
}

LayerStack LayerStack::suspended_sheet(const materials::MaterialModel& sheet) {
  return LayerStack({Layer{materials::Dielectric{1.0}, kInfiniteThickness, 1.0, "vacuum"},
                     Layer{materials::Dielectric{1.0}, kInfiniteThickness, 1.0, "vacuum"}},
                    {sheet});
}

LayerStack LayerStack::slab(const materials::MaterialModel& medium, double thickness) {
  return LayerStack({Layer{materials::Dielectric{1.0}, kInfiniteThickness, 1.0, "vacuum"},
                     Layer{medium, thickness, 1.0, "slab"},
                     Layer{materials::Dielectric{1.0}, kInfiniteThickness, 1.0, "vacuum"}},
                    {std::nullopt, std::nullopt});
}

LayerStack LayerStack::double_sheet(const materials::MaterialModel& sheet, const materials::MaterialModel& spacer,
                                    double spacing) {
  return LayerStack({Layer{materials::Dielectric{1.0}, kInfiniteThickness, 1.0, "vacuum"},
                     Layer{spacer, spacing, 1.0, "spacer"},
                     Layer{materials::Dielectric{1.0}, kInfiniteThickness, 1.0, "vacuum"}},
                    {sheet, sheet});
}

void LayerStack::validate() const {
  if (layers_.size() < 2) throw InvalidArgument("a layer stack needs at least two layers");
  if (sheets_.size() != layers_.size() - 1) {
    throw InvalidArgument("a layer stack needs exactly one (possibly empty) sheet slot per interface");
  }
  const auto* top = std::get_if<materials::Dielectric>(&layers_.front().medium);
  if (top == nullptr || top->eps_r != 1.0 || layers_.front().mu != 1.0) {
    throw InvalidArgument("layer 1 (atom side) must be vacuum");
  }
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto& l = layers_[i];
    const bool outer = i == 0 || i + 1 == layers_.size();
    if (outer && !std::isinf(l.thickness)) throw InvalidArgument("outer layers must be infinitely thick");
    if (!outer && !(l.thickness > 0.0 && std::isfinite(l.thickness))) {
      throw InvalidArgument("inner layer " + std::to_string(i + 1) + " needs a finite positive thickness");
    }
    if (!(l.mu > 0.0)) throw InvalidArgument("layer permeability must be positive");
    if (materials::is_sheet(l.medium)) {
      throw InvalidArgument("graphene belongs on an interface, not in a bulk layer");
    }
    materials::validate(l.medium);
  }
  for (const auto& s : sheets_) {
    if (!s) continue;
    if (!materials::is_sheet(*s)) throw InvalidArgument("only conducting sheets can sit on interfaces");
    materials::validate(*s);
  }
}

std::unique_ptr<ReflectionSlice> LayerStack::slice(cd omega, double temperature) const {
  if (omega.real() < 0.0 || omega.imag() < 0.0 || (omega.real() != 0.0 && omega.imag() != 0.0)) {
    throw InvalidArgument("reflection needs omega > 0 on the real axis or on the positive imaginary axis");
  }
  if (omega == 0.0) throw InvalidArgument("reflection at omega = 0 must be taken as a limit");
  return std::make_unique<StackSlice>(*this, omega, temperature);
}

bool LayerStack::is_vacuum() const {
  for (const auto& s : sheets_) {
    if (s) return false;
  }
  for (const auto& l : layers_) {
    const auto* d = std::get_if<materials::Dielectric>(&l.medium);
    if (d == nullptr || d->eps_r != 1.0 || l.mu != 1.0) return false;
  }
  return true;
}

ReflectionPair LayerStack::reflection(double k_parallel, cd omega, double temperature) const {
  return slice(omega, temperature)->at(k_parallel);
}

std::string LayerStack::describe() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto& l = layers_[i];
    out << "layer " << i + 1 << ": " << materials::describe(l.medium);
    if (std::isfinite(l.thickness)) out << ", thickness " << l.thickness << " m";
    if (l.mu != 1.0) out << ", mu " << l.mu;
    out << "\n";
    if (i < sheets_.size() && sheets_[i]) {
      out << "  sheet " << i + 1 << "|" << i + 2 << ": " << materials::describe(*sheets_[i]) << "\n";
    }
  }
  return out.str();
}

}  // namespace rydcp::em
