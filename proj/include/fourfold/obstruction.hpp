#pragma once

// Einstein-metric verdicts with certificates, and homeomorphism classification
// of simply connected expressions from (chi, tau, parity).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fourfold/alpha.hpp"
#include "fourfold/invariants.hpp"
#include "fourfold/manifold.hpp"

namespace fourfold {

struct HitchinThorpeReport {
  std::int64_t plus_value = 0;   // 2 chi + 3 tau
  std::int64_t minus_value = 0;  // 2 chi - 3 tau
  bool plus_ok = true;
  bool minus_ok = true;
  bool plus_equality = false;
  bool minus_equality = false;
  /// Strict failure, or an equality case that rules out K3 and T4 covers.
  bool obstructed = false;
  std::string equality_diagnosis;
  std::vector<std::string> certificate;
  /// Certificate line of the first obstruction, empty if none fired.
  std::string deciding_line;
};

HitchinThorpeReport hitchin_thorpe(const InvariantRecord& r);

struct SeibergWittenReport {
  enum class Outcome { Passed, Obstructed, Unknown, Inconclusive };
  Outcome outcome = Outcome::Inconclusive;
  bool plus_obstructed = false;
  bool minus_obstructed = false;
  std::vector<std::string> certificate;
  std::string deciding_line;
};

/// Checks 2 chi + 3 tau >= (2/3) alpha^2 and 2 chi - 3 tau >= (1/3) alpha^2
/// with their equality clauses. Inconclusive when alpha^2 has no value.
SeibergWittenReport sw_einstein_obstruction(const ManifoldExpr& e, const InvariantRecord& r, const AlphaValue& a);

struct ExistenceReport {
  bool exists = false;
  /// HK, FLAT, ROUND, TIAN, PAGE, YAU or AY; empty when none is known.
  std::string tag;
  std::string reason;
};

/// Known Einstein metrics, checked for e and its reversal.
ExistenceReport einstein_existence(const ManifoldExpr& e);

enum class Parity : std::uint8_t { Even, Odd, Unknown };

std::string_view to_string(Parity p);

struct HomeoType {
  std::int64_t chi = 0;
  std::int64_t tau = 0;
  std::int64_t b_plus = 0;
  std::int64_t b_minus = 0;
  Parity parity = Parity::Unknown;
  std::optional<std::string> canonical;
  bool eleven_eighths_regime = false;
  bool rokhlin_violation = false;
  bool donaldson_excluded = false;
};

/// Throws NotSimplyConnected unless r.simply_connected is yes.
HomeoType freedman_class(const InvariantRecord& r);

Tri homeomorphic(const ManifoldExpr& e1, const ManifoldExpr& e2);

struct FormScreen {
  bool donaldson_excluded = false;
  bool rokhlin_violation = false;
  bool admissible() const { return !donaldson_excluded && !rokhlin_violation; }
};

FormScreen smoothable_form(std::int64_t b_plus, std::int64_t b_minus, Parity parity);

struct Verdict {
  enum class Conclusion { Obstructed, Exists, Unknown };
  Conclusion conclusion = Conclusion::Unknown;
  /// Tag of the deciding check, empty for Unknown.
  std::string tag;
  std::string reason;
  std::vector<std::string> certificate;
  std::optional<InvariantRecord> record;
  AlphaValue alpha;
};

std::string_view to_string(Verdict::Conclusion c);

/// Throws ConsistencyError if an existence and an obstruction certificate
/// both fire.
Verdict verdict(const ManifoldExpr& e);

}  // namespace fourfold
