#include "fourfold/obstruction.hpp"

#include <cstdlib>

#include "fourfold/parser.hpp"

namespace fourfold {

namespace {

std::string num(std::int64_t v) {
  return std::to_string(v);
}

bool could_be_k3(std::int64_t chi, std::int64_t tau, const InvariantRecord& r) {
  return chi == 24 && tau == -16 && r.spin != Tri::No && r.simply_connected != Tri::No;
}

bool could_be_t4(const InvariantRecord& r) {
  return r.chi == 0 && r.tau == 0 && r.spin != Tri::No && r.simply_connected != Tri::Yes;
}

std::optional<Atom> single_atom(const ManifoldExpr& e) {
  const AtomCounts counts = atoms(e);
  if (counts.size() != 1 || counts.front().second != 1) return std::nullopt;
  return counts.front().first;
}

bool is_k3_or_t4(const ManifoldExpr& e) {
  const auto a = single_atom(e);
  return a && (a->is_k3() || a->tag() == AtomTag::T4);
}

}  // namespace

HitchinThorpeReport hitchin_thorpe(const InvariantRecord& r) {
  HitchinThorpeReport h;
  h.plus_value = r.two_chi_plus_three_tau();
  h.minus_value = r.two_chi_minus_three_tau();
  h.plus_ok = h.plus_value >= 0;
  h.minus_ok = h.minus_value >= 0;
  h.plus_equality = h.plus_value == 0;
  h.minus_equality = h.minus_value == 0;

  const std::string plus_text = "2chi+3tau = 2*" + num(r.chi) + " + 3*(" + num(r.tau) + ") = " + num(h.plus_value);
  const std::string minus_text = "2chi-3tau = 2*" + num(r.chi) + " - 3*(" + num(r.tau) + ") = " + num(h.minus_value);

  // Plus side: equality forces K3 (chi 24, tau -16); minus side: reversed K3.
  auto diagnose = [&](const std::string& tag, const std::string& text, std::int64_t value, bool k3_match) {
    if (value < 0) {
      h.obstructed = true;
      h.certificate.push_back(tag + ": " + text + " < 0, violated");
      if (h.deciding_line.empty()) h.deciding_line = h.certificate.back();
      return;
    }
    if (value > 0) {
      h.certificate.push_back(tag + ": " + text + " > 0, passes");
      return;
    }
    std::string diag;
    if (r.simply_connected == Tri::Yes && !k3_match) {
      h.obstructed = true;
      diag = "equality for a simply connected manifold requires K3, ruled out by (chi, tau, spin) = (" + num(r.chi) +
             ", " + num(r.tau) + ", " + std::string(to_string(r.spin)) + ")";
    } else if (r.simply_connected == Tri::Yes) {
      diag = "equality with the invariants of K3, admissible";
    } else {
      diag = "equality, a finite cover may be T4 or K3, admissible";
    }
    if (!h.equality_diagnosis.empty()) h.equality_diagnosis += "; ";
    h.equality_diagnosis += diag;
    h.certificate.push_back(tag + ": " + text + ", " + diag);
    if (h.obstructed && h.deciding_line.empty()) h.deciding_line = h.certificate.back();
  };
  diagnose("HT+", plus_text, h.plus_value, could_be_k3(r.chi, r.tau, r));
  diagnose("HT-", minus_text, h.minus_value, could_be_k3(r.chi, -r.tau, r));
  return h;
}

SeibergWittenReport sw_einstein_obstruction(const ManifoldExpr& e, const InvariantRecord& r, const AlphaValue& a) {
  SeibergWittenReport out;
  if (!a.has_value()) {
    out.outcome = SeibergWittenReport::Outcome::Inconclusive;
    out.certificate.push_back("SW: alpha^2 is " + std::string(to_string(a.status)) + ", no check");
    return out;
  }
  const bool bound = a.status == AlphaValue::Status::LowerBound;
  const std::string alpha_text = "alpha^2 " + std::string(bound ? ">= " : "= ") + to_string(a.value);
  bool unknown = false;

  // Plus side.
  {
    const Rational lhs = r.two_chi_plus_three_tau();
    const Rational rhs = Rational(2, 3) * a.value;
    const std::string text = "2chi+3tau = " + to_string(lhs) + " vs (2/3)*alpha^2 = " + to_string(rhs) + ", " +
                             alpha_text;
    if (lhs < rhs) {
      out.plus_obstructed = true;
      out.certificate.push_back("SW+: " + text + "; " + to_string(lhs) + " < " + to_string(rhs) + ", violated");
    } else if (lhs == rhs && a.value > 0) {
      out.plus_obstructed = true;
      out.certificate.push_back("SW+: " + text + "; equality with alpha^2 > 0 requires both sides to vanish, M is "
                                "neither K3 nor T4");
    } else if (lhs == rhs) {
      if (is_k3_or_t4(e)) {
        out.certificate.push_back("SW+: " + text + "; both sides vanish and M is K3 or T4, permitted");
      } else if (could_be_k3(r.chi, r.tau, r) || could_be_t4(r)) {
        unknown = true;
        out.certificate.push_back("SW+: " + text + "; both sides vanish, M has the invariants of K3 or T4, "
                                  "diffeomorphism type undecided");
      } else {
        out.plus_obstructed = true;
        out.certificate.push_back("SW+: " + text + "; both sides vanish but M is neither K3 nor T4");
      }
    } else {
      out.certificate.push_back("SW+: " + text + "; passes");
    }
  }

  // Minus side.
  {
    const Rational lhs = r.two_chi_minus_three_tau();
    const Rational rhs = Rational(1, 3) * a.value;
    const std::string text = "2chi-3tau = " + to_string(lhs) + " vs (1/3)*alpha^2 = " + to_string(rhs) + ", " +
                             alpha_text;
    if (lhs < rhs) {
      out.minus_obstructed = true;
      out.certificate.push_back("SW-: " + text + "; " + to_string(lhs) + " < " + to_string(rhs) + ", violated");
    } else if (lhs == rhs && a.value > 0) {
      if (r.simply_connected == Tri::Yes) {
        out.minus_obstructed = true;
        out.certificate.push_back("SW-: " + text + "; equality requires a complex-hyperbolic quotient, which is "
                                  "never simply connected");
      } else {
        unknown = true;
        out.certificate.push_back("SW-: " + text + "; equality, complex-hyperbolic quotient not excluded");
      }
    } else {
      out.certificate.push_back("SW-: " + text + "; passes");
    }
  }

  for (const auto& line : out.certificate) {
    const bool plus = line.starts_with("SW+") && out.plus_obstructed;
    const bool minus = line.starts_with("SW-") && out.minus_obstructed;
    if ((plus || minus) && out.deciding_line.empty()) out.deciding_line = line;
  }
  if (out.plus_obstructed || out.minus_obstructed) {
    out.outcome = SeibergWittenReport::Outcome::Obstructed;
  } else if (unknown) {
    out.outcome = SeibergWittenReport::Outcome::Unknown;
  } else {
    out.outcome = SeibergWittenReport::Outcome::Passed;
  }
  return out;
}

namespace {

ExistenceReport existence_one(const ManifoldExpr& e) {
  ExistenceReport out;
  const AtomCounts counts = atoms(e);
  auto found = [&](std::string tag, std::string reason) {
    out.exists = true;
    out.tag = std::move(tag);
    out.reason = std::move(reason);
    return out;
  };
  if (counts.empty()) return found("ROUND", "round metric on S4");
  if (counts.size() == 2 && counts[0].first.tag() == AtomTag::CP2 && counts[0].second == 1 &&
      counts[1].first.tag() == AtomTag::CP2Rev) {
    const std::int64_t k = counts[1].second;
    if (k == 1) return found("PAGE", "Page metric on CP2 # CP2~");
    if (k >= 3 && k <= 8) return found("TIAN", "Kaehler-Einstein metric on the del Pezzo surface CP2 # " + num(k) +
                                                   "*CP2~");
    return out;
  }
  if (counts.size() != 1 || counts.front().second != 1) return out;
  const Atom& a = counts.front().first;
  if (a.reversed()) return out;
  switch (a.tag()) {
    case AtomTag::CP2:
      return found("TIAN", "Fubini-Study metric on CP2");
    case AtomTag::S2xS2:
      return found("TIAN", "product of round metrics on S2xS2");
    case AtomTag::T4:
      return found("FLAT", "flat metric on T4");
    case AtomTag::Hypersurface:
      if (a.is_k3()) return found("HK", "Ricci-flat hyper-Kaehler metric on K3");
      if (a.degree() == 3) return found("TIAN", "Kaehler-Einstein metric on the cubic surface");
      return found("AY", "K ample on Hyp(" + num(a.degree()) + "), Kaehler-Einstein metric with negative scalar curvature");
    case AtomTag::CyclicCover: {
      const std::int64_t m = cover_canonical_multiple(a.cover_order(), a.degree());
      const std::string name = format_atom(a);
      if (m < 0) return found("TIAN", "anti-canonical bundle ample on " + name + ", Kaehler-Einstein metric");
      if (m == 0) return found("YAU", "K trivial on " + name + ", Ricci-flat Kaehler metric");
      return found("AY", "K = " + num(m) + "H ample on " + name + ", Kaehler-Einstein metric with negative scalar curvature");
    }
    case AtomTag::Surface:
      if (a.surface_spec().ample_K) return found("AY", "K ample, Kaehler-Einstein metric with negative scalar curvature");
      return out;
    default:
      return out;
  }
}

}  // namespace

ExistenceReport einstein_existence(const ManifoldExpr& e) {
  ExistenceReport direct = existence_one(e);
  if (direct.exists) return direct;
  ExistenceReport flipped = existence_one(reverse(e));
  if (flipped.exists) flipped.reason += " (reversed orientation)";
  return flipped;
}

std::string_view to_string(Parity p) {
  switch (p) {
    case Parity::Even:
      return "even";
    case Parity::Odd:
      return "odd";
    case Parity::Unknown:
      break;
  }
  return "unknown";
}

FormScreen smoothable_form(std::int64_t b_plus, std::int64_t b_minus, Parity parity) {
  if (b_plus < 0 || b_minus < 0) throw DomainError("Betti numbers must be non-negative");
  FormScreen s;
  if (parity == Parity::Even) {
    s.donaldson_excluded = (b_plus == 0 || b_minus == 0) && b_plus + b_minus > 0;
    s.rokhlin_violation = pos_mod(b_plus - b_minus, 16) != 0;
  }
  return s;
}

HomeoType freedman_class(const InvariantRecord& r) {
  if (r.simply_connected != Tri::Yes) throw NotSimplyConnected("Freedman classification needs a simply connected manifold");
  HomeoType h;
  h.chi = r.chi;
  h.tau = r.tau;
  h.b_plus = r.b_plus;
  h.b_minus = r.b_minus;
  h.parity = r.spin == Tri::Yes ? Parity::Even : r.spin == Tri::No ? Parity::Odd : Parity::Unknown;
  const FormScreen screen = smoothable_form(r.b_plus, r.b_minus, h.parity);
  h.rokhlin_violation = screen.rokhlin_violation;
  h.donaldson_excluded = screen.donaldson_excluded;
  const std::int64_t abs_tau = std::llabs(r.tau);
  if (h.parity == Parity::Odd) {
    h.canonical = num(r.b_plus) + "*CP2 # " + num(r.b_minus) + "*CP2~";
  } else if (h.parity == Parity::Even) {
    h.eleven_eighths_regime = 8 * r.chi < 11 * abs_tau + 16;
    if (r.chi == 2 && r.tau == 0) {
      h.canonical = "S4";
    } else if (pos_mod(r.tau, 16) == 0) {
      const std::int64_t m = abs_tau / 16;
      const std::int64_t rest = r.chi - 2 - 22 * m;
      if (rest >= 0 && rest % 2 == 0) {
        h.canonical = num(m) + (r.tau > 0 ? "*reverse(K3)" : "*K3") + " # " + num(rest / 2) + "*S2xS2";
      }
    }
  }
  return h;
}

Tri homeomorphic(const ManifoldExpr& e1, const ManifoldExpr& e2) {
  if (normalize(e1) == normalize(e2)) return Tri::Yes;
  InvariantRecord r1;
  InvariantRecord r2;
  try {
    r1 = invariants(e1);
    r2 = invariants(e2);
  } catch (const UnsupportedExpression&) {
    return Tri::Unknown;
  }
  if (r1.chi != r2.chi || r1.tau != r2.tau) return Tri::No;
  const bool sc1 = r1.simply_connected == Tri::Yes;
  const bool sc2 = r2.simply_connected == Tri::Yes;
  if (sc1 != sc2 && r1.simply_connected != Tri::Unknown && r2.simply_connected != Tri::Unknown) return Tri::No;
  if (!sc1 || !sc2) return Tri::Unknown;
  if (r1.spin == Tri::Unknown || r2.spin == Tri::Unknown) return Tri::Unknown;
  return tri_from_bool(r1.spin == r2.spin);
}

std::string_view to_string(Verdict::Conclusion c) {
  switch (c) {
    case Verdict::Conclusion::Obstructed:
      return "obstructed";
    case Verdict::Conclusion::Exists:
      return "exists";
    case Verdict::Conclusion::Unknown:
      break;
  }
  return "unknown";
}

Verdict verdict(const ManifoldExpr& e) {
  Verdict v;
  const ExistenceReport ex = einstein_existence(e);
  if (ex.exists) v.certificate.push_back(ex.tag + ": " + ex.reason);

  std::string obstruction_line;
  auto note_obstruction = [&](const std::string& line) {
    if (!line.empty() && obstruction_line.empty()) obstruction_line = line;
  };

  try {
    v.record = invariants(e);
  } catch (const UnsupportedExpression& err) {
    v.certificate.push_back(std::string("invariants unavailable: ") + err.what());
  }
  bool sw_unknown = false;
  if (v.record) {
    const HitchinThorpeReport ht = hitchin_thorpe(*v.record);
    v.certificate.insert(v.certificate.end(), ht.certificate.begin(), ht.certificate.end());
    note_obstruction(ht.deciding_line);

    v.alpha = alpha_squared(e);
    const SeibergWittenReport sw = sw_einstein_obstruction(e, *v.record, v.alpha);
    v.certificate.insert(v.certificate.end(), sw.certificate.begin(), sw.certificate.end());
    note_obstruction(sw.deciding_line);
    sw_unknown = sw.outcome == SeibergWittenReport::Outcome::Unknown;

    // An Einstein metric is Einstein for both orientations.
    const ManifoldExpr flipped = reverse(e);
    if (!(flipped == normalize(e))) {
      const InvariantRecord fr = invariants(flipped);
      const SeibergWittenReport swr = sw_einstein_obstruction(flipped, fr, alpha_squared(flipped));
      if (swr.outcome == SeibergWittenReport::Outcome::Obstructed) {
        for (const auto& line : swr.certificate) v.certificate.push_back(line + " (reversed orientation)");
        note_obstruction(swr.deciding_line + " (reversed orientation)");
      }
    }
  } else {
    v.alpha = alpha_squared(e);
  }

  const bool obstructed = !obstruction_line.empty();
  const std::string obstruction_tag = obstruction_line.substr(0, obstruction_line.find(':'));
  if (ex.exists && obstructed) {
    throw ConsistencyError("existence (" + ex.tag + ") and obstruction (" + obstruction_tag + ") both fire for " +
                           format(normalize(e)));
  }
  if (ex.exists) {
    v.conclusion = Verdict::Conclusion::Exists;
    v.tag = ex.tag;
    v.reason = ex.reason;
  } else if (obstructed) {
    v.conclusion = Verdict::Conclusion::Obstructed;
    v.tag = obstruction_tag;
    v.reason = obstruction_line.substr(obstruction_line.find(':') + 2);
  } else {
    v.conclusion = Verdict::Conclusion::Unknown;
    v.reason = sw_unknown ? "equality case with the invariants of K3 or T4 is undecided"
                          : "no existence or obstruction result applies";
  }
  return v;
}

}  // namespace fourfold
