#pragma once

#include <cstdint>
#include <optional>

#include "fourfold/manifold.hpp"

namespace fourfold {

/// Complex-geometric data of M = X # k CP2~ with X the minimal model.
struct ComplexData {
  bool is_complex = true;
  std::int64_t c1sq = 0;
  /// c1^2 of the minimal model; absent when the user supplied a non-minimal
  /// surface without saying what it blows down to.
  std::optional<std::int64_t> c1sq_minimal_model;
  std::int64_t chi_h = 0;
  bool ample_K = false;
  bool minimal = false;
  std::int64_t blowup_count = 0;

  bool operator==(const ComplexData&) const = default;
};

struct InvariantRecord {
  std::int64_t chi = 0;
  std::int64_t tau = 0;
  std::int64_t b_plus = 0;
  std::int64_t b_minus = 0;
  std::optional<std::int64_t> b1;
  Tri spin = Tri::Unknown;
  Tri simply_connected = Tri::Unknown;
  std::optional<ComplexData> complex;
  /// Admits a metric of positive scalar curvature.
  Tri psc = Tri::Unknown;
  /// Admits a metric with s identically zero.
  Tri scalar_flat = Tri::Unknown;

  bool operator==(const InvariantRecord&) const = default;

  std::int64_t two_chi_plus_three_tau() const;
  std::int64_t two_chi_minus_three_tau() const;
};

/// Exact invariants of an expression. Throws UnsupportedExpression when the
/// catalog has no rule (e.g. a non-simply-connected Surface whose b1 is not
/// known) and ConsistencyError if internal identities fail.
InvariantRecord invariants(const ManifoldExpr& e);

/// Invariants of the atom alone, as a single summand.
InvariantRecord atom_invariants(const Atom& a);

/// Degree-d smooth hypersurface in CP3.
InvariantRecord hypersurface_invariants(std::int64_t degree);

/// p-fold cyclic cover of CP2 branched over a smooth curve of degree d.
InvariantRecord cover_invariants(std::int64_t order, std::int64_t degree);

/// For a p-fold cover of degree d, the integer m with K = m * (pullback of H).
std::int64_t cover_canonical_multiple(std::int64_t order, std::int64_t degree);

/// Noether's formula and b+ = 2 chi_h - 1 (the latter for simply connected
/// records only). False when complex data is absent.
bool noether_check(const InvariantRecord& r);

/// True when the canonical expression is one complex atom of standard
/// orientation plus k >= 0 copies of CP2~.
bool is_complex_surface_expression(const ManifoldExpr& e);

}  // namespace fourfold
