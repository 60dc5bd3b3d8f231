#include "fourfold/curvature.hpp"

#include <algorithm>
#include <stdexcept>

namespace fourfold {

Rational ModelGeometry::wplus_sq() const {
  Rational total = 0;
  for (const auto& l : wplus_spectrum) total += l * l;
  return total;
}

namespace {

std::vector<ModelGeometry> make_models() {
  std::vector<ModelGeometry> out;
  auto add = [&](ModelGeometry m) { out.push_back(std::move(m)); };

  add({"S4", 12, {0, 0, 0}, Rational(0), 0, Rational(8, 3), 2, 0, false, true});
  add({"T4", 0, {0, 0, 0}, Rational(0), 0, Rational(1), 0, 0, true, true});
  add({"CP2", 24, {4, -2, -2}, Rational(0), 0, Rational(1, 2), 3, 1, true, true});
  // Same metric, opposite orientation: the Weyl blocks trade places.
  add({"reverse(CP2)", 24, {0, 0, 0}, Rational(24), 0, Rational(1, 2), 3, -1, false, true});
  add({"S2xS2", 4, {Rational(2, 3), Rational(-1, 3), Rational(-1, 3)}, Rational(2, 3), 0, Rational(16), 4, 0, true,
       true});
  add({"K3", 0, {0, 0, 0}, std::nullopt, 0, std::nullopt, 24, -16, true, true});
  add({"CH2", -24, {-4, 2, 2}, Rational(0), 0, std::nullopt, std::nullopt, std::nullopt, true, true});
  add({"H4", -12, {0, 0, 0}, Rational(0), 0, std::nullopt, std::nullopt, std::nullopt, false, true});
  return out;
}

void require_topology(const ModelGeometry& m) {
  if (!m.chi || !m.tau) throw MissingData(m.name + ": chi and tau are not available");
}

}  // namespace

const std::vector<ModelGeometry>& builtin_models() {
  static const std::vector<ModelGeometry> models = make_models();
  return models;
}

const ModelGeometry& model(std::string_view name) {
  for (const auto& m : builtin_models()) {
    if (m.name == name) return m;
  }
  throw std::out_of_range("no model named " + std::string(name));
}

Rational gauss_bonnet_residual(const ModelGeometry& m, int sign) {
  require_topology(m);
  Rational weyl_sq;
  if (sign > 0) {
    weyl_sq = m.wplus_sq();
  } else {
    if (!m.wminus_sq) throw MissingData(m.name + ": |W-|^2 is not available");
    weyl_sq = *m.wminus_sq;
  }
  const Rational lhs = 2 * *m.chi + (sign > 0 ? 3 : -3) * *m.tau;
  const Rational density = m.s * m.s / 24 + 2 * weyl_sq - m.ricci0_sq / 2;
  if (density == 0) return lhs;
  if (!m.volume) throw MissingData(m.name + ": volume is not available");
  return lhs - density * *m.volume / 4;
}

GaussBonnetResiduals gauss_bonnet_check(const ModelGeometry& m) {
  return {gauss_bonnet_residual(m, 1), gauss_bonnet_residual(m, -1)};
}

bool kaehler_spectrum_check(const ModelGeometry& m) {
  if (!m.kaehler) return false;
  std::array<Rational, 3> expected{m.s / 6, -m.s / 12, -m.s / 12};
  std::array<Rational, 3> actual = m.wplus_spectrum;
  std::sort(expected.begin(), expected.end());
  std::sort(actual.begin(), actual.end());
  return actual == expected && m.s * m.s == 24 * m.wplus_sq();
}

Rational weitzenboeck_parallel_check(const ModelGeometry& m) {
  if (!m.kaehler || !m.einstein) {
    throw PreconditionViolation(m.name + ": parallel-form check needs a Kaehler-Einstein model");
  }
  // The Kaehler form spans the eigenline of the non-repeated eigenvalue.
  const auto& sp = m.wplus_spectrum;
  Rational on_omega = sp[0];
  if (sp[0] == sp[1]) on_omega = sp[2];
  if (sp[0] == sp[2]) on_omega = sp[1];
  const Rational omega_sq = 2;
  return -2 * on_omega * omega_sq + (m.s / 3) * omega_sq;
}

bool saturation_check(const ModelGeometry& m) {
  if (!m.kaehler || !m.einstein || !m.wminus_sq || *m.wminus_sq != 0) {
    throw PreconditionViolation(m.name + ": saturation check needs a Kaehler-Einstein model with W- = 0");
  }
  const Rational lhs = (m.s * m.s / 24 + 2 * *m.wminus_sq - m.ricci0_sq / 2) / 4;
  const Rational rhs = Rational(1, 3) * m.s * m.s / 32;
  return lhs == rhs;
}

Rational lowest_wplus_eigenvalue(const ModelGeometry& m) {
  return *std::min_element(m.wplus_spectrum.begin(), m.wplus_spectrum.end());
}

}  // namespace fourfold
