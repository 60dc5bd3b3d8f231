#include "fourfold/manifold.hpp"

#include <algorithm>
#include <map>
#include <variant>

namespace fourfold {

// ---------------------------------------------------------------------------
// Atom

Atom Atom::s4() {
  return Atom(AtomTag::S4, 0, 0, {});
}

Atom Atom::cp2() {
  return Atom(AtomTag::CP2, 0, 0, {});
}

Atom Atom::cp2_rev() {
  return Atom(AtomTag::CP2Rev, 0, 0, {});
}

Atom Atom::s2xs2() {
  return Atom(AtomTag::S2xS2, 0, 0, {});
}

Atom Atom::t4() {
  return Atom(AtomTag::T4, 0, 0, {});
}

Atom Atom::k3() {
  return hypersurface(4);
}

Atom Atom::hypersurface(std::int64_t degree) {
  if (degree < 1) throw DomainError("hypersurface degree must be >= 1, got " + std::to_string(degree));
  // A hyperplane is CP2 and a smooth quadric is S2 x S2 with its standard orientation.
  if (degree == 1) return cp2();
  if (degree == 2) return s2xs2();
  return Atom(AtomTag::Hypersurface, 0, degree, {});
}

Atom Atom::cyclic_cover(std::int64_t order, std::int64_t degree) {
  if (order < 2) throw DomainError("cyclic cover order must be >= 2, got " + std::to_string(order));
  if (degree < 1) throw DomainError("branch curve degree must be >= 1, got " + std::to_string(degree));
  if (degree % order != 0) {
    throw DomainError("cyclic cover order " + std::to_string(order) + " does not divide branch degree " +
                      std::to_string(degree));
  }
  return Atom(AtomTag::CyclicCover, order, degree, {});
}

Atom Atom::surface(const SurfaceSpec& spec) {
  if (spec.chi_h < 1) throw DomainError("Surface: chi_h must be >= 1");
  const std::int64_t e = checked_sub(checked_mul(12, spec.chi_h), spec.c1sq);
  if (e < 3) throw DomainError("Surface: Euler number 12*chi_h - c1sq = " + std::to_string(e) + " must be >= 3");
  if (spec.ample_K && !spec.minimal) throw DomainError("Surface: ample_K requires minimal");
  if (spec.ample_K && spec.c1sq <= 0) throw DomainError("Surface: ample_K requires c1sq > 0");
  // Bogomolov-Miyaoka-Yau; strict for simply connected surfaces of general type.
  if (spec.c1sq > checked_mul(3, e)) throw DomainError("Surface: c1sq exceeds 3*e (Miyaoka-Yau)");
  if (spec.ample_K && spec.simply_connected && spec.c1sq == 3 * e) {
    throw DomainError("Surface: simply connected surface of general type with c1sq = 3e does not exist");
  }
  if (spec.simply_connected) {
    const std::int64_t b_plus = 2 * spec.chi_h - 1;
    const std::int64_t b_minus = e - 2 - b_plus;
    if (b_minus < 0) throw DomainError("Surface: data gives negative b_minus");
    if (spec.minimal && b_plus > 1 && spec.c1sq < 0) {
      throw DomainError("Surface: minimal surface with b+ > 1 must have c1sq >= 0");
    }
    const std::int64_t tau = spec.c1sq - 8 * spec.chi_h;
    if (spec.spin == Tri::Yes && pos_mod(tau, 16) != 0) {
      throw DomainError("Surface: spin surface with signature " + std::to_string(tau) + " violates Rokhlin");
    }
  }
  return Atom(AtomTag::Surface, 0, 0, spec);
}

Atom Atom::reverse() const {
  switch (tag_) {
    case AtomTag::S4:
    case AtomTag::S2xS2:
      return *this;
    case AtomTag::CP2:
      return cp2_rev();
    case AtomTag::CP2Rev:
      return cp2();
    default:
      break;
  }
  Atom r = *this;
  r.orientation_ = reversed() ? Orientation::Standard : Orientation::Reversed;
  return r;
}

// ---------------------------------------------------------------------------
// ManifoldExpr

struct ManifoldExpr::Node {
  struct Rev {
    ManifoldExpr operand;
  };
  std::variant<Atom, std::vector<Summand>, Rev> value;
};

ManifoldExpr ManifoldExpr::atom(const Atom& a) {
  return ManifoldExpr(std::make_shared<const Node>(Node{a}));
}

ManifoldExpr ManifoldExpr::sum(std::vector<Summand> summands) {
  for (const auto& s : summands) {
    if (s.count < 0) throw DomainError("connected-sum multiplicity must be non-negative");
  }
  return ManifoldExpr(std::make_shared<const Node>(Node{std::move(summands)}));
}

ManifoldExpr ManifoldExpr::reverse(const ManifoldExpr& e) {
  return ManifoldExpr(std::make_shared<const Node>(Node{Node::Rev{e}}));
}

ManifoldExpr::Kind ManifoldExpr::kind() const {
  switch (node_->value.index()) {
    case 0:
      return Kind::Atom;
    case 1:
      return Kind::Sum;
    default:
      return Kind::Reverse;
  }
}

const Atom& ManifoldExpr::as_atom() const {
  return std::get<Atom>(node_->value);
}

std::span<const ManifoldExpr::Summand> ManifoldExpr::summands() const {
  return std::get<std::vector<Summand>>(node_->value);
}

const ManifoldExpr& ManifoldExpr::operand() const {
  return std::get<Node::Rev>(node_->value).operand;
}

bool ManifoldExpr::operator==(const ManifoldExpr& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Atom:
      return as_atom() == other.as_atom();
    case Kind::Reverse:
      return operand() == other.operand();
    case Kind::Sum: {
      const auto a = summands();
      const auto b = other.summands();
      if (a.size() != b.size()) return false;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].count != b[i].count || !(a[i].expr == b[i].expr)) return false;
      }
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Normal form

namespace {

void collect(const ManifoldExpr& e, bool flip, std::int64_t mult, std::map<Atom, std::int64_t>& acc) {
  if (mult == 0) return;
  switch (e.kind()) {
    case ManifoldExpr::Kind::Atom: {
      const Atom a = flip ? e.as_atom().reverse() : e.as_atom();
      if (a.tag() == AtomTag::S4) return;
      auto& slot = acc[a];
      slot = checked_add(slot, mult);
      return;
    }
    case ManifoldExpr::Kind::Reverse:
      collect(e.operand(), !flip, mult, acc);
      return;
    case ManifoldExpr::Kind::Sum:
      for (const auto& s : e.summands()) collect(s.expr, flip, checked_mul(mult, s.count), acc);
      return;
  }
}

}  // namespace

AtomCounts atoms(const ManifoldExpr& e) {
  std::map<Atom, std::int64_t> acc;
  collect(e, false, 1, acc);
  return AtomCounts(acc.begin(), acc.end());
}

ManifoldExpr from_atoms(const AtomCounts& counts) {
  std::map<Atom, std::int64_t> acc;
  for (const auto& [a, n] : counts) {
    if (n < 0) throw DomainError("negative atom count");
    if (n == 0 || a.tag() == AtomTag::S4) continue;
    auto& slot = acc[a];
    slot = checked_add(slot, n);
  }
  if (acc.empty()) return ManifoldExpr::atom(Atom::s4());
  if (acc.size() == 1 && acc.begin()->second == 1) return ManifoldExpr::atom(acc.begin()->first);
  std::vector<ManifoldExpr::Summand> parts;
  parts.reserve(acc.size());
  for (const auto& [a, n] : acc) parts.push_back({ManifoldExpr::atom(a), n});
  return ManifoldExpr::sum(std::move(parts));
}

ManifoldExpr normalize(const ManifoldExpr& e) {
  return from_atoms(atoms(e));
}

ManifoldExpr reverse(const ManifoldExpr& e) {
  return normalize(ManifoldExpr::reverse(e));
}

ManifoldExpr connected_sum(const ManifoldExpr& a, const ManifoldExpr& b) {
  return normalize(ManifoldExpr::sum({{a, 1}, {b, 1}}));
}

ManifoldExpr blow_up(const ManifoldExpr& e, std::int64_t k) {
  return normalize(ManifoldExpr::sum({{e, 1}, {ManifoldExpr::atom(Atom::cp2_rev()), k}}));
}

bool is_canonical(const ManifoldExpr& e) {
  return normalize(e) == e;
}

std::int64_t summand_count(const AtomCounts& counts) {
  std::int64_t n = 0;
  for (const auto& [a, k] : counts) n = checked_add(n, k);
  return n;
}

}  // namespace fourfold
