#include "fourfold/alpha.hpp"

#include <functional>

namespace fourfold {

AlphaValue AlphaValue::exact(Rational q, std::vector<std::string> trace) {
  return {Status::Exact, std::move(q), std::move(trace)};
}

AlphaValue AlphaValue::lower_bound(Rational q, std::vector<std::string> trace) {
  return {Status::LowerBound, std::move(q), std::move(trace)};
}

AlphaValue AlphaValue::unknown(std::vector<std::string> trace) {
  return {Status::Unknown, 0, std::move(trace)};
}

AlphaValue AlphaValue::undefined(std::vector<std::string> trace) {
  return {Status::Undefined, 0, std::move(trace)};
}

std::string_view to_string(AlphaValue::Status s) {
  switch (s) {
    case AlphaValue::Status::Exact:
      return "exact";
    case AlphaValue::Status::LowerBound:
      return "lower_bound";
    case AlphaValue::Status::Unknown:
      return "unknown";
    case AlphaValue::Status::Undefined:
      break;
  }
  return "undefined";
}

namespace {

// Minimal simply connected complex atom in standard orientation, or nullopt.
std::optional<InvariantRecord> minimal_complex_atom(const Atom& a) {
  if (a.reversed() || a.tag() == AtomTag::CP2Rev || a.tag() == AtomTag::S4) return std::nullopt;
  InvariantRecord r;
  try {
    r = atom_invariants(a);
  } catch (const UnsupportedExpression&) {
    return std::nullopt;
  }
  if (!r.complex || !r.complex->minimal || r.simply_connected != Tri::Yes) return std::nullopt;
  return r;
}

}  // namespace

AlphaValue alpha_squared(const ManifoldExpr& e) {
  std::vector<std::string> trace;
  InvariantRecord r;
  try {
    r = invariants(e);
  } catch (const UnsupportedExpression& err) {
    trace.push_back(std::string("invariants unavailable: ") + err.what());
    trace.push_back("R5: no rule applies");
    return AlphaValue::unknown(std::move(trace));
  }

  if (r.b_plus < 2) {
    trace.push_back("R0: b+ = " + std::to_string(r.b_plus) + " < 2, alpha is not defined");
    return AlphaValue::undefined(std::move(trace));
  }

  if (r.complex && is_complex_surface_expression(e)) {
    const ComplexData& c = *r.complex;
    if (c.c1sq_minimal_model && *c.c1sq_minimal_model >= 0) {
      trace.push_back("R1: complex surface X # " + std::to_string(c.blowup_count) +
                      "*CP2~ with b+ = " + std::to_string(r.b_plus) + " > 1; alpha^2 = c1^2(X) = " +
                      std::to_string(*c.c1sq_minimal_model));
      return AlphaValue::exact(*c.c1sq_minimal_model, std::move(trace));
    }
    trace.push_back("R1 skipped: c1^2 of the minimal model is not known");
  }

  const AtomCounts counts = atoms(e);
  if (summand_count(counts) == 3) {
    Rational total = 0;
    bool all_match = true;
    std::string detail;
    for (const auto& [a, n] : counts) {
      const auto ar = minimal_complex_atom(a);
      if (!ar || pos_mod(ar->b_plus, 4) != 3 || *ar->complex->c1sq_minimal_model < 0) {
        all_match = false;
        break;
      }
      total += Rational(*ar->complex->c1sq_minimal_model) * n;
      detail += (detail.empty() ? "" : " + ") + std::to_string(n) + "*" +
                std::to_string(*ar->complex->c1sq_minimal_model);
    }
    if (all_match) {
      trace.push_back("R2: sum of three minimal simply connected complex surfaces with b+ = 3 mod 4; alpha^2 = " +
                      detail + " = " + to_string(total));
      return AlphaValue::exact(total, std::move(trace));
    }
  }

  if (r.psc == Tri::Yes) {
    trace.push_back("R3: admits positive scalar curvature, so there are no monopole classes; alpha^2 = 0");
    return AlphaValue::exact(0, std::move(trace));
  }
  if (r.scalar_flat == Tri::Yes) {
    trace.push_back("R4: a metric with s = 0 gives 0 >= 32 pi^2 alpha^2; alpha^2 = 0");
    return AlphaValue::exact(0, std::move(trace));
  }
  trace.push_back("R5: no catalog rule applies");
  return AlphaValue::unknown(std::move(trace));
}

Rational scalar_l2_lower_bound(const AlphaValue& a) {
  if (!a.has_value()) {
    throw BoundUnavailable("alpha^2 is " + std::string(to_string(a.status)) + "; no scalar curvature bound");
  }
  return 32 * a.value;
}

Rational scalar_l2_lower_bound(const ManifoldExpr& e) {
  return scalar_l2_lower_bound(alpha_squared(e));
}

MixedBoundConstants mixed_bound_constants(const AlphaValue& a) {
  if (!a.has_value()) {
    throw BoundUnavailable("alpha^2 is " + std::string(to_string(a.status)) + "; no mixed curvature bound");
  }
  MixedBoundConstants out;
  out.linear_sq_pi2 = 72 * a.value;
  out.quadratic = Rational(2, 3) * a.value;
  out.lower_bound_only = a.status == AlphaValue::Status::LowerBound;
  return out;
}

MixedBoundConstants mixed_bound_constants(const ManifoldExpr& e) {
  return mixed_bound_constants(alpha_squared(e));
}

namespace {

// Writes target = sum of at most `slots` triangular numbers j(j+1)/2 with j >= 1.
bool triangular_parts(std::int64_t target, int slots, std::int64_t max_j, std::vector<std::int64_t>& out) {
  if (target == 0) return true;
  if (slots == 0) return false;
  for (std::int64_t j = max_j; j >= 1; --j) {
    const std::int64_t t = j * (j + 1) / 2;
    if (t > target) continue;
    out.push_back(j);
    if (triangular_parts(target - t, slots - 1, j, out)) return true;
    out.pop_back();
  }
  return false;
}

// Characteristic vector (all odd entries) of square `square` in diag(1^p, -1^q).
std::optional<IntVector> characteristic_vector(std::int64_t p, std::int64_t q, std::int64_t square) {
  IntVector v = IntVector::Ones(p + q);
  const std::int64_t defect = square - (p - q);
  if (pos_mod(defect, 8) != 0) return std::nullopt;
  const std::int64_t t = (defect < 0 ? -defect : defect) / 8;
  const std::int64_t slots = defect >= 0 ? p : q;
  std::int64_t max_j = 1;
  while ((max_j + 1) * (max_j + 2) / 2 <= t) ++max_j;
  std::vector<std::int64_t> parts;
  if (!triangular_parts(t, static_cast<int>(std::min<std::int64_t>(slots, 3)), max_j, parts)) return std::nullopt;
  const std::int64_t offset = defect >= 0 ? 0 : p;
  for (std::size_t i = 0; i < parts.size(); ++i) v(offset + static_cast<Eigen::Index>(i)) = 2 * parts[i] + 1;
  return v;
}

}  // namespace

QuadraticFormSpace known_class_space(const ManifoldExpr& e) {
  if (!is_complex_surface_expression(e)) {
    throw UnsupportedExpression("known_class_space needs a complex surface X # k CP2~");
  }
  std::optional<Atom> base;
  std::int64_t k = 0;
  for (const auto& [a, n] : atoms(e)) {
    if (a.tag() == AtomTag::CP2Rev) {
      k = n;
    } else {
      base = a;
    }
  }
  const InvariantRecord x = atom_invariants(*base);
  if (x.spin != Tri::No || x.simply_connected != Tri::Yes || !x.complex || !x.complex->minimal) {
    throw UnsupportedExpression("known_class_space needs a minimal, non-spin, simply connected X");
  }
  if (k > 3) throw UnsupportedExpression("known_class_space supports at most 3 blow-ups");
  const auto c1 = characteristic_vector(x.b_plus, x.b_minus, x.complex->c1sq);
  if (!c1) throw UnsupportedExpression("no characteristic vector found for c1(X)");

  const Eigen::Index n = x.b_plus + x.b_minus + k;
  IntMatrix gram = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) gram(i, i) = i < x.b_plus ? 1 : -1;

  std::vector<IntVector> classes;
  for (std::int64_t mask = 0; mask < (std::int64_t{1} << (k + 1)); ++mask) {
    IntVector v = IntVector::Zero(n);
    v.head(x.b_plus + x.b_minus) = (mask & 1) ? IntVector(-*c1) : *c1;
    for (std::int64_t i = 0; i < k; ++i) v(x.b_plus + x.b_minus + i) = ((mask >> (i + 1)) & 1) ? -1 : 1;
    classes.push_back(std::move(v));
  }
  return QuadraticFormSpace(std::move(gram), std::move(classes));
}

}  // namespace fourfold
