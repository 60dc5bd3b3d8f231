#pragma once

// Closed-form curvature data of model geometries and exact checks of the
// curvature identities they must satisfy. Volumes are stored as coefficients
// of pi^2 so every quantity stays rational.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fourfold/common.hpp"

namespace fourfold {

struct ModelGeometry {
  std::string name;
  Rational s;
  /// Eigenvalues of W+ on self-dual 2-forms; sum to zero.
  std::array<Rational, 3> wplus_spectrum;
  std::optional<Rational> wminus_sq;
  Rational ricci0_sq;
  std::optional<Rational> volume;
  std::optional<std::int64_t> chi;
  std::optional<std::int64_t> tau;
  bool kaehler = false;
  bool einstein = false;

  Rational wplus_sq() const;
};

const std::vector<ModelGeometry>& builtin_models();

/// Throws std::out_of_range for unknown names.
const ModelGeometry& model(std::string_view name);

/// (2chi + 3tau) - (1/4pi^2) int (s^2/24 + 2|W+|^2 - |r0|^2/2) with sign = +1,
/// and the W- analog with sign = -1. When the integrand vanishes identically
/// the volume is not needed. Throws MissingData otherwise.
Rational gauss_bonnet_residual(const ModelGeometry& m, int sign);

struct GaussBonnetResiduals {
  Rational plus;
  Rational minus;
};

GaussBonnetResiduals gauss_bonnet_check(const ModelGeometry& m);

/// Spectrum equals (s/6, -s/12, -s/12) up to order and s^2 = 24|W+|^2.
/// False for non-Kaehler models.
bool kaehler_spectrum_check(const ModelGeometry& m);

/// -2 W+(w, w) + (s/3)|w|^2 for the parallel Kaehler form w, |w|^2 = 2.
/// Throws PreconditionViolation unless the model is Kaehler-Einstein.
Rational weitzenboeck_parallel_check(const ModelGeometry& m);

/// (1/4)(s^2/24 + 2|W-|^2 - |r0|^2/2) == (1/3)(s^2/32). Requires a
/// Kaehler-Einstein model with W- = 0.
bool saturation_check(const ModelGeometry& m);

Rational lowest_wplus_eigenvalue(const ModelGeometry& m);

}  // namespace fourfold
