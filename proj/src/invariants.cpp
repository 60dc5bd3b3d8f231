#include "fourfold/invariants.hpp"

namespace fourfold {

std::int64_t InvariantRecord::two_chi_plus_three_tau() const {
  return checked_add(checked_mul(2, chi), checked_mul(3, tau));
}

std::int64_t InvariantRecord::two_chi_minus_three_tau() const {
  return checked_sub(checked_mul(2, chi), checked_mul(3, tau));
}

namespace {

bool is_complex_atom(const Atom& a) {
  if (a.reversed()) return false;
  switch (a.tag()) {
    case AtomTag::CP2:
    case AtomTag::S2xS2:
    case AtomTag::T4:
    case AtomTag::Hypersurface:
    case AtomTag::CyclicCover:
    case AtomTag::Surface:
      return true;
    default:
      return false;
  }
}

std::int64_t exact_div(std::int64_t num, std::int64_t den, const char* what) {
  if (num % den != 0) {
    throw ConsistencyError(std::string(what) + " is not integral (" + std::to_string(num) + "/" +
                           std::to_string(den) + ")");
  }
  return num / den;
}

// Fills b+ and b- of a simply connected complex surface from chi_h and chi.
void fill_betti_from_complex(InvariantRecord& r, std::int64_t chi_h) {
  r.b_plus = checked_sub(checked_mul(2, chi_h), 1);
  r.b_minus = checked_sub(checked_sub(r.chi, 2), r.b_plus);
}

// Minimal-model data for rational surfaces given by c1^2: CP2 and S2xS2 are
// minimal, everything else with c1^2 < 8 is CP2 blown up 9 - c1^2 times.
void rational_minimal_model(ComplexData& c) {
  if (c.c1sq == 9 || c.c1sq == 8) {
    c.minimal = true;
    c.c1sq_minimal_model = c.c1sq;
    c.blowup_count = 0;
  } else {
    c.minimal = false;
    c.c1sq_minimal_model = 9;
    c.blowup_count = 9 - c.c1sq;
  }
}

InvariantRecord s4_record() {
  InvariantRecord r;
  r.chi = 2;
  r.b1 = 0;
  r.spin = Tri::Yes;
  r.simply_connected = Tri::Yes;
  r.psc = Tri::Yes;
  r.scalar_flat = Tri::Yes;
  return r;
}

InvariantRecord cp2_record() {
  InvariantRecord r;
  r.chi = 3;
  r.tau = 1;
  r.b_plus = 1;
  r.b1 = 0;
  r.spin = Tri::No;
  r.simply_connected = Tri::Yes;
  r.psc = Tri::Yes;
  r.scalar_flat = Tri::Yes;
  r.complex = ComplexData{true, 9, 9, 1, false, true, 0};
  return r;
}

InvariantRecord s2xs2_record() {
  InvariantRecord r;
  r.chi = 4;
  r.b_plus = 1;
  r.b_minus = 1;
  r.b1 = 0;
  r.spin = Tri::Yes;
  r.simply_connected = Tri::Yes;
  r.psc = Tri::Yes;
  r.scalar_flat = Tri::Yes;
  r.complex = ComplexData{true, 8, 8, 1, false, true, 0};
  return r;
}

InvariantRecord t4_record() {
  InvariantRecord r;
  r.b_plus = 3;
  r.b_minus = 3;
  r.b1 = 4;
  r.spin = Tri::Yes;
  r.simply_connected = Tri::No;
  r.psc = Tri::No;
  r.scalar_flat = Tri::Yes;
  r.complex = ComplexData{true, 0, 0, 0, false, true, 0};
  return r;
}

InvariantRecord surface_record(const SurfaceSpec& s) {
  if (!s.simply_connected) {
    throw UnsupportedExpression("Surface with sc=no: b1 and hence b+/b- are not determined by (c1sq, chi_h)");
  }
  InvariantRecord r;
  r.chi = s.euler();
  r.tau = checked_sub(s.c1sq, checked_mul(8, s.chi_h));
  fill_betti_from_complex(r, s.chi_h);
  r.b1 = 0;
  r.spin = s.spin;
  r.simply_connected = Tri::Yes;
  if (r.b_plus > 1) {
    r.psc = Tri::No;
    if (s.minimal && s.c1sq > 0) r.scalar_flat = Tri::No;
  }
  ComplexData c;
  c.c1sq = s.c1sq;
  c.chi_h = s.chi_h;
  c.ample_K = s.ample_K;
  c.minimal = s.minimal;
  if (s.minimal) c.c1sq_minimal_model = s.c1sq;
  r.complex = c;
  return r;
}

InvariantRecord reversed_record(InvariantRecord r) {
  std::swap(r.b_plus, r.b_minus);
  r.tau = -r.tau;
  r.complex.reset();
  return r;
}

void check_consistency(const InvariantRecord& r) {
  if (r.simply_connected == Tri::Yes) {
    if (r.chi != 2 + r.b_plus + r.b_minus) throw ConsistencyError("chi != 2 + b+ + b- for a simply connected record");
    if (r.tau != r.b_plus - r.b_minus) throw ConsistencyError("tau != b+ - b-");
  }
  if (r.b1 && r.chi != 2 - 2 * *r.b1 + r.b_plus + r.b_minus) {
    throw ConsistencyError("chi != 2 - 2 b1 + b2");
  }
  if (r.spin == Tri::Yes && pos_mod(r.tau, 16) != 0) {
    throw ConsistencyError("spin record with tau = " + std::to_string(r.tau) + " violates Rokhlin");
  }
  if (r.complex) {
    const ComplexData& c = *r.complex;
    if (checked_mul(12, c.chi_h) != checked_add(c.c1sq, r.chi)) throw ConsistencyError("Noether formula fails");
    if (c.c1sq_minimal_model && *c.c1sq_minimal_model - c.blowup_count != c.c1sq) {
      throw ConsistencyError("c1sq != c1sq(minimal model) - blowups");
    }
  }
}

}  // namespace

InvariantRecord hypersurface_invariants(std::int64_t d) {
  if (d < 1) throw DomainError("hypersurface degree must be >= 1");
  const std::int64_t d2 = checked_mul(d, d);
  const std::int64_t d3 = checked_mul(d2, d);
  InvariantRecord r;
  r.chi = checked_add(checked_sub(d3, checked_mul(4, d2)), checked_mul(6, d));
  r.tau = exact_div(checked_sub(checked_mul(4, d), d3), 3, "hypersurface signature");
  ComplexData c;
  c.c1sq = checked_mul(d, checked_mul(4 - d, 4 - d));
  c.chi_h = exact_div(checked_add(c.c1sq, r.chi), 12, "hypersurface chi_h");
  c.ample_K = d >= 5;
  if (d <= 3) {
    rational_minimal_model(c);
  } else {
    c.minimal = true;
    c.c1sq_minimal_model = c.c1sq;
  }
  fill_betti_from_complex(r, c.chi_h);
  r.b1 = 0;
  r.spin = tri_from_bool(d % 2 == 0);
  r.simply_connected = Tri::Yes;
  r.psc = tri_from_bool(d <= 3);
  r.scalar_flat = tri_from_bool(d <= 4);
  r.complex = c;
  check_consistency(r);
  return r;
}

std::int64_t cover_canonical_multiple(std::int64_t p, std::int64_t d) {
  if (p < 2 || d < 1 || d % p != 0) throw DomainError("cyclic cover requires p >= 2 and p | d");
  return checked_mul(d / p, p - 1) - 3;
}

InvariantRecord cover_invariants(std::int64_t p, std::int64_t d) {
  const std::int64_t m = cover_canonical_multiple(p, d);
  const std::int64_t genus = checked_mul(d - 1, d - 2) / 2;
  const std::int64_t euler_branch = checked_sub(2, checked_mul(2, genus));
  InvariantRecord r;
  r.chi = checked_sub(checked_mul(3, p), checked_mul(p - 1, euler_branch));
  ComplexData c;
  c.c1sq = checked_mul(p, checked_mul(m, m));
  r.tau = exact_div(checked_sub(c.c1sq, checked_mul(2, r.chi)), 3, "cyclic cover signature");
  c.chi_h = exact_div(checked_add(c.c1sq, r.chi), 12, "cyclic cover chi_h");
  c.ample_K = m >= 1;
  if (m < 0) {
    rational_minimal_model(c);
  } else {
    c.minimal = true;
    c.c1sq_minimal_model = c.c1sq;
  }
  fill_betti_from_complex(r, c.chi_h);
  r.b1 = 0;
  // K = m * pullback(H) and pullback(H)^2 = p: even m gives a spin surface;
  // odd m with 4 not dividing p cannot have K divisible by 2.
  if (m % 2 == 0) {
    r.spin = Tri::Yes;
  } else if (p % 4 != 0) {
    r.spin = Tri::No;
  } else {
    r.spin = Tri::Unknown;
  }
  r.simply_connected = Tri::Yes;
  r.psc = tri_from_bool(m < 0);
  r.scalar_flat = tri_from_bool(m <= 0);
  r.complex = c;
  check_consistency(r);
  return r;
}

InvariantRecord atom_invariants(const Atom& a) {
  InvariantRecord r;
  switch (a.tag()) {
    case AtomTag::S4:
      return s4_record();
    case AtomTag::CP2:
      return cp2_record();
    case AtomTag::CP2Rev:
      return reversed_record(cp2_record());
    case AtomTag::S2xS2:
      return s2xs2_record();
    case AtomTag::T4:
      r = t4_record();
      break;
    case AtomTag::Hypersurface:
      r = hypersurface_invariants(a.degree());
      break;
    case AtomTag::CyclicCover:
      r = cover_invariants(a.cover_order(), a.degree());
      break;
    case AtomTag::Surface:
      r = surface_record(a.surface_spec());
      break;
  }
  if (a.reversed()) r = reversed_record(std::move(r));
  check_consistency(r);
  return r;
}

bool is_complex_surface_expression(const ManifoldExpr& e) {
  const AtomCounts counts = atoms(e);
  int complex_atoms = 0;
  for (const auto& [a, n] : counts) {
    if (a.tag() == AtomTag::CP2Rev) continue;
    if (!is_complex_atom(a) || n != 1) return false;
    ++complex_atoms;
  }
  return complex_atoms == 1;
}

bool noether_check(const InvariantRecord& r) {
  if (!r.complex) return false;
  const ComplexData& c = *r.complex;
  if (12 * c.chi_h != c.c1sq + r.chi) return false;
  if (r.simply_connected == Tri::Yes && r.b_plus != 2 * c.chi_h - 1) return false;
  return true;
}

InvariantRecord invariants(const ManifoldExpr& e) {
  const AtomCounts counts = atoms(e);
  if (counts.empty()) return s4_record();
  if (counts.size() == 1 && counts.front().second == 1) return atom_invariants(counts.front().first);

  InvariantRecord r;
  r.spin = Tri::Yes;
  r.simply_connected = Tri::Yes;
  Tri all_psc = Tri::Yes;
  std::int64_t total = 0;
  std::optional<ComplexData> base_complex;
  std::int64_t blowups = 0;
  for (const auto& [a, n] : counts) {
    const InvariantRecord ar = atom_invariants(a);
    total = checked_add(total, n);
    r.chi = checked_add(r.chi, checked_mul(n, ar.chi));
    r.tau = checked_add(r.tau, checked_mul(n, ar.tau));
    r.b_plus = checked_add(r.b_plus, checked_mul(n, ar.b_plus));
    r.b_minus = checked_add(r.b_minus, checked_mul(n, ar.b_minus));
    r.spin = tri_all(r.spin, ar.spin);
    r.simply_connected = tri_all(r.simply_connected, ar.simply_connected);
    all_psc = tri_all(all_psc, ar.psc);
    if (a.tag() == AtomTag::CP2Rev) {
      blowups = n;
    } else if (is_complex_atom(a) && ar.complex) {
      base_complex = ar.complex;
    }
  }
  // chi(M1 # M2) = chi(M1) + chi(M2) - 2
  r.chi = checked_sub(r.chi, checked_mul(2, total - 1));
  if (r.simply_connected == Tri::Yes) r.b1 = 0;

  if (is_complex_surface_expression(e) && base_complex) {
    ComplexData c = *base_complex;
    c.c1sq = checked_sub(c.c1sq, blowups);
    c.blowup_count = checked_add(c.blowup_count, blowups);
    c.minimal = c.minimal && blowups == 0;
    c.ample_K = c.ample_K && blowups == 0;
    r.complex = c;
  }

  if (all_psc == Tri::Yes) {
    r.psc = Tri::Yes;
    r.scalar_flat = Tri::Yes;
  } else if (r.complex && r.b_plus > 1) {
    // Complex surfaces with b+ > 1 carry Seiberg-Witten basic classes.
    r.psc = Tri::No;
    if (r.complex->c1sq_minimal_model && *r.complex->c1sq_minimal_model > 0) r.scalar_flat = Tri::No;
  }
  check_consistency(r);
  return r;
}

}  // namespace fourfold
