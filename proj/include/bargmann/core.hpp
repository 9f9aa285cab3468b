#pragma once

#include "bargmann/errors.hpp"
#include "bargmann/sector.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace bargmann {

enum class ModelKind { displaced, squeezed, two_mode, k_harmonic };

inline std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::displaced: return "displaced";
    case ModelKind::squeezed: return "squeezed";
    case ModelKind::two_mode: return "two-mode";
    case ModelKind::k_harmonic: return "k-harmonic";
  }
  return "unknown";
}

inline ModelKind parse_model_kind(std::string_view name) {
  if (name == "displaced") return ModelKind::displaced;
  if (name == "squeezed") return ModelKind::squeezed;
  if (name == "two-mode" || name == "two_mode") return ModelKind::two_mode;
  if (name == "k-harmonic" || name == "k_harmonic") return ModelKind::k_harmonic;
  throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

/// Which oscillator, its mode frequency omega and coupling g.
///
///   displaced   H = omega a^+a + g (a^+ + a)                   k = 1
///   squeezed    H = omega a^+a + g (a^+^2 + a^2)               k = 2
///   two_mode    H = omega (a1^+a1 + a2^+a2) + g (a1^+a2^+ + a1 a2)
///   k_harmonic  H = omega a^+a + g (a^+^k + a^k)               k >= 1
struct ModelSpec {
  ModelKind kind = ModelKind::displaced;
  int k = 1;  // 0 for two_mode
  double omega = 1.0;
  double g = 0.0;

  static ModelSpec displaced(double omega, double g) { return make(ModelKind::displaced, 1, omega, g); }
  static ModelSpec squeezed(double omega, double g) { return make(ModelKind::squeezed, 2, omega, g); }
  static ModelSpec two_mode(double omega, double g) { return make(ModelKind::two_mode, 0, omega, g); }
  static ModelSpec k_harmonic(int k, double omega, double g) {
    return make(ModelKind::k_harmonic, k, omega, g);
  }

  void validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("omega must be positive");
    if (!std::isfinite(g)) throw std::invalid_argument("coupling g must be finite");
    switch (kind) {
      case ModelKind::displaced:
        if (k != 1) throw std::invalid_argument("displaced model has k = 1");
        break;
      case ModelKind::squeezed:
        if (k != 2) throw std::invalid_argument("squeezed model has k = 2");
        break;
      case ModelKind::two_mode:
        if (k != 0) throw std::invalid_argument("two-mode model has no harmonic order");
        break;
      case ModelKind::k_harmonic:
        if (k < 1) throw std::invalid_argument("harmonic order k must be >= 1");
        break;
    }
  }

  /// Harmonic order with the displaced/squeezed aliases resolved; 0 for two_mode.
  int order() const { return kind == ModelKind::two_mode ? 0 : k; }

  bool single_mode() const { return kind != ModelKind::two_mode; }

 private:
  static ModelSpec make(ModelKind kind, int k, double omega, double g) {
    ModelSpec m;
    m.kind = kind;
    m.k = k;
    m.omega = omega;
    m.g = g;
    m.validate();
    return m;
  }
};

inline constexpr std::size_t default_kappa_sectors = 8;

/// Irreducible sectors of the model's Fock space: the k values of q for
/// single-mode models, the first `kappa_count` kappa values for two_mode.
inline std::vector<SectorLabel> sector_labels(const ModelSpec& model,
                                              std::size_t kappa_count = default_kappa_sectors) {
  model.validate();
  std::vector<SectorLabel> out;
  if (model.kind == ModelKind::two_mode) {
    for (std::size_t i = 0; i < kappa_count; ++i)
      out.push_back(SectorLabel::kappa(make_rational(static_cast<std::int64_t>(i) + 1, 2)));
    return out;
  }
  for (int j = 0; j < model.order(); ++j) out.push_back(SectorLabel::q_index(model.order(), j));
  return out;
}

/// Lambda = sqrt(1 - g^2/omega^2) (two_mode) or Omega = sqrt(1 - 4g^2/omega^2)
/// (squeezed, and k_harmonic with k = 2).
struct StabilityFactor {
  double value = 1.0;
};

inline StabilityFactor stability_factor(const ModelSpec& model) {
  model.validate();
  double ratio = 0.0;
  if (model.kind == ModelKind::two_mode) {
    ratio = model.g / model.omega;
  } else if (model.order() == 2) {
    ratio = 2.0 * model.g / model.omega;
  } else {
    throw std::invalid_argument("stability factor is defined for the two-mode and squeezed models only");
  }
  if (!(std::abs(ratio) < 1.0)) throw domain_error("outside unitary regime");
  return {std::sqrt((1.0 - ratio) * (1.0 + ratio))};
}

struct EnergyLevel {
  SectorLabel sector;
  std::size_t M = 0;  // polynomial degree
  double E = 0.0;
};

namespace detail {

inline void require_compatible(const ModelSpec& model, const SectorLabel& sector) {
  if (model.kind == ModelKind::two_mode) {
    if (sector.kind() != SectorKind::kappa)
      throw std::invalid_argument("two-mode model needs a kappa sector, got q = " + sector.str());
    return;
  }
  if (sector.kind() != SectorKind::q || sector.order() != model.order())
    throw std::invalid_argument("sector " + sector.str() + " does not belong to the order-" +
                                std::to_string(model.order()) + " model");
}

}  // namespace detail

/// Closed-form energy of the degree-M polynomial eigenstate in `sector`.
inline EnergyLevel exact_energy(const ModelSpec& model, const SectorLabel& sector, std::size_t M) {
  model.validate();
  detail::require_compatible(model, sector);
  const double w = model.omega;
  const auto m = static_cast<double>(M);
  if (model.kind == ModelKind::two_mode) {
    const double lambda = stability_factor(model).value;
    const double two_kappa = 2.0 * sector.to_double();
    return {sector, M, -w + (2.0 * m + two_kappa) * w * lambda};
  }
  switch (model.order()) {
    case 1:
      // Displaced oscillator: valid for every real g.
      return {sector, M, w * (m - (model.g / w) * (model.g / w))};
    case 2: {
      const double om = stability_factor(model).value;
      // 2(q - 1/4) is the sector offset j.
      return {sector, M, -0.5 * w + (2.0 * m + static_cast<double>(sector.offset()) + 0.5) * w * om};
    }
    default:
      throw domain_error("no closed-form spectrum for harmonic order k = " + std::to_string(model.order()));
  }
}

/// Lowest `levels` energies over all sectors, ascending. Each sector
/// contributes its degrees M = 0 .. levels-1.
inline std::vector<EnergyLevel> full_spectrum(const ModelSpec& model, std::size_t levels,
                                              std::size_t kappa_count = default_kappa_sectors) {
  if (levels == 0) throw std::invalid_argument("levels must be positive");
  std::vector<EnergyLevel> all;
  for (const auto& sector : sector_labels(model, kappa_count))
    for (std::size_t M = 0; M < levels; ++M) all.push_back(exact_energy(model, sector, M));
  std::stable_sort(all.begin(), all.end(), [](const EnergyLevel& a, const EnergyLevel& b) {
    return std::tie(a.E, a.M) < std::tie(b.E, b.M);
  });
  all.erase(all.begin() + static_cast<std::ptrdiff_t>(std::min(levels, all.size())), all.end());
  return all;
}

}  // namespace bargmann
