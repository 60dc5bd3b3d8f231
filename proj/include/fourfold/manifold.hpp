#pragma once

// Expression algebra for smooth compact oriented 4-manifolds: atoms, connected
// sums and orientation reversal, together with the canonical normal form used
// for every structural comparison in the library.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "fourfold/common.hpp"

namespace fourfold {

enum class Orientation : std::uint8_t { Standard, Reversed };

/// Numerical description of a compact complex surface supplied by the user.
struct SurfaceSpec {
  std::int64_t c1sq = 0;
  std::int64_t chi_h = 1;
  bool minimal = true;
  bool ample_K = false;
  Tri spin = Tri::Unknown;
  bool simply_connected = true;

  auto operator<=>(const SurfaceSpec&) const = default;

  /// Euler number from Noether's formula.
  std::int64_t euler() const { return 12 * chi_h - c1sq; }
};

/// Variant tags, in the fixed total order used for canonical forms. K3 has no
/// tag of its own: it is the quartic hypersurface.
enum class AtomTag : std::uint8_t {
  S4,
  CP2,
  S2xS2,
  T4,
  Hypersurface,
  CyclicCover,
  Surface,
  CP2Rev,
};

/// A prime summand. Construction goes through the named factories, which
/// validate parameters and apply the atom-level identifications
/// (Hyp(1) = CP2, Hyp(2) = S2xS2, K3 = Hyp(4)).
class Atom {
 public:
  static Atom s4();
  static Atom cp2();
  static Atom cp2_rev();
  static Atom s2xs2();
  static Atom t4();
  static Atom k3();
  static Atom hypersurface(std::int64_t degree);
  static Atom cyclic_cover(std::int64_t order, std::int64_t degree);
  static Atom surface(const SurfaceSpec& spec);

  AtomTag tag() const { return tag_; }
  Orientation orientation() const { return orientation_; }
  bool reversed() const { return orientation_ == Orientation::Reversed; }

  // Hypersurface degree, or branch-curve degree for cyclic covers.
  std::int64_t degree() const { return degree_; }
  // Order p of a cyclic cover.
  std::int64_t cover_order() const { return order_; }
  const SurfaceSpec& surface_spec() const { return surface_; }

  bool is_k3() const { return tag_ == AtomTag::Hypersurface && degree_ == 4; }
  bool orientation_symmetric() const { return tag_ == AtomTag::S4 || tag_ == AtomTag::S2xS2; }

  /// Orientation reversal on a single atom.
  Atom reverse() const;

  auto operator<=>(const Atom&) const = default;

 private:
  Atom(AtomTag tag, std::int64_t order, std::int64_t degree, SurfaceSpec surface)
      : tag_(tag), order_(order), degree_(degree), surface_(surface) {}

  AtomTag tag_;
  std::int64_t order_ = 0;
  std::int64_t degree_ = 0;
  SurfaceSpec surface_{};
  Orientation orientation_ = Orientation::Standard;
};

/// Sorted, run-length encoded multiset of atoms; the canonical content of an
/// expression. Counts are strictly positive and S4 never appears.
using AtomCounts = std::vector<std::pair<Atom, std::int64_t>>;

/// Immutable expression tree. Copies share structure.
class ManifoldExpr {
 public:
  enum class Kind : std::uint8_t { Atom, Sum, Reverse };

  struct Summand;

  static ManifoldExpr atom(const Atom& a);
  /// Connected sum; counts must be non-negative (0 contributes nothing).
  static ManifoldExpr sum(std::vector<Summand> summands);
  static ManifoldExpr reverse(const ManifoldExpr& e);

  Kind kind() const;
  const Atom& as_atom() const;
  std::span<const Summand> summands() const;
  const ManifoldExpr& operand() const;

  /// Tree equality. On canonical forms this is identity of normal forms.
  bool operator==(const ManifoldExpr& other) const;

 private:
  struct Node;
  explicit ManifoldExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct ManifoldExpr::Summand {
  ManifoldExpr expr;
  std::int64_t count = 1;
};

/// Canonical form: reversal pushed to atoms, sums flattened, S4 removed,
/// atoms sorted and run-length encoded.
ManifoldExpr normalize(const ManifoldExpr& e);

/// Canonical form of the orientation reversal.
ManifoldExpr reverse(const ManifoldExpr& e);

/// Atom multiset of the canonical form.
AtomCounts atoms(const ManifoldExpr& e);

/// Builds the canonical expression with the given content.
ManifoldExpr from_atoms(const AtomCounts& counts);

ManifoldExpr connected_sum(const ManifoldExpr& a, const ManifoldExpr& b);

/// e # k CP2~.
ManifoldExpr blow_up(const ManifoldExpr& e, std::int64_t k = 1);

bool is_canonical(const ManifoldExpr& e);

/// Total number of prime summands (with multiplicity) in canonical form.
std::int64_t summand_count(const AtomCounts& counts);

}  // namespace fourfold
