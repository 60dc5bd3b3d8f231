#pragma once

// Catalog evaluation of alpha^2(M), the Seiberg-Witten invariant measuring how
// far monopole classes are from being anti-self-dual, and the curvature lower
// bounds it feeds.

#include <string>
#include <vector>

#include "fourfold/common.hpp"
#include "fourfold/form_space.hpp"
#include "fourfold/invariants.hpp"
#include "fourfold/manifold.hpp"

namespace fourfold {

struct AlphaValue {
  enum class Status { Exact, LowerBound, Unknown, Undefined };

  Status status = Status::Unknown;
  /// Meaningful for Exact and LowerBound only; always >= 0 there.
  Rational value = 0;
  std::vector<std::string> trace;

  bool has_value() const { return status == Status::Exact || status == Status::LowerBound; }

  static AlphaValue exact(Rational q, std::vector<std::string> trace);
  static AlphaValue lower_bound(Rational q, std::vector<std::string> trace);
  static AlphaValue unknown(std::vector<std::string> trace);
  static AlphaValue undefined(std::vector<std::string> trace);
};

std::string_view to_string(AlphaValue::Status s);

/// Rules, first match wins:
///   R0  b+ < 2                                   -> Undefined
///   R1  complex surface X # k CP2~ with b+ > 1    -> Exact(c1^2(X))
///   R2  X1 # X2 # X3, minimal simply connected
///       complex atoms with b+ = 3 mod 4          -> Exact(sum c1^2(Xi))
///   R3  admits positive scalar curvature          -> Exact(0)
///   R4  admits a scalar-flat metric               -> Exact(0)
///   R5  otherwise                                 -> Unknown
AlphaValue alpha_squared(const ManifoldExpr& e);

/// Lower bound for the L2 norm of scalar curvature, as the coefficient c of
/// pi^2 in  int s^2 dmu >= c pi^2  (c = 32 alpha^2).
Rational scalar_l2_lower_bound(const AlphaValue& a);
Rational scalar_l2_lower_bound(const ManifoldExpr& e);

/// Constants of the mixed scalar / self-dual Weyl bounds:
///   ||s|| + sqrt(6) ||W+|| >= 6 sqrt(2) pi alpha, stored squared as
///   linear_sq_pi2 = 72 alpha^2 (coefficient of pi^2);
///   (1/4pi^2) int (s^2/24 + 2|W+|^2) >= quadratic = (2/3) alpha^2.
struct MixedBoundConstants {
  Rational linear_sq_pi2;
  Rational quadratic;
  bool lower_bound_only = false;
};

MixedBoundConstants mixed_bound_constants(const AlphaValue& a);
MixedBoundConstants mixed_bound_constants(const ManifoldExpr& e);

/// Intersection form of X # k CP2~ (X a non-spin simply connected complex atom,
/// diagonalized) with the basic classes +-c1(X) +- E1 ... +- Ek. The numeric
/// inf-max over this set is a lower bound for alpha^2 and equals c1^2(X).
/// Throws UnsupportedExpression outside that fragment or for k > 3.
QuadraticFormSpace known_class_space(const ManifoldExpr& e);

}  // namespace fourfold
