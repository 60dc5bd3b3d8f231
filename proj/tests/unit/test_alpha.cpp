#include <doctest.h>

#include "fourfold/alpha.hpp"
#include "fourfold/numeric_alpha.hpp"
#include "fourfold/parser.hpp"

using namespace fourfold;

namespace {

AlphaValue alpha(std::string_view text) {
  return alpha_squared(parse(text));
}

}  // namespace

TEST_SUITE("alpha-engine") {
  TEST_CASE("worked values") {
    const auto m = alpha("Cover(3,6) # CP2~");
    CHECK(m.status == AlphaValue::Status::Exact);
    CHECK(m.value == 3);
    REQUIRE_FALSE(m.trace.empty());
    CHECK(m.trace.back().rfind("R1", 0) == 0);

    const auto k3 = alpha("K3");
    CHECK(k3.status == AlphaValue::Status::Exact);
    CHECK(k3.value == 0);

    const auto triple = alpha("3*Cover(2,8)");
    CHECK(triple.status == AlphaValue::Status::Exact);
    CHECK(triple.value == 6);
    CHECK(triple.trace.back().rfind("R2", 0) == 0);

    const auto psc = alpha("5*CP2 # 9*CP2~");
    CHECK(psc.status == AlphaValue::Status::Exact);
    CHECK(psc.value == 0);
    CHECK(psc.trace.back().rfind("R3", 0) == 0);
  }

  TEST_CASE("rule boundaries") {
    CHECK(alpha("CP2 # 2*CP2~").status == AlphaValue::Status::Undefined);
    CHECK(alpha("S4").status == AlphaValue::Status::Undefined);
    CHECK(alpha("T4").status == AlphaValue::Status::Exact);
    CHECK(alpha("Cover(2,8) # Cover(2,8)").status == AlphaValue::Status::Unknown);
    // Blow-ups of a triple sum are outside the catalog.
    CHECK(alpha("3*Cover(2,8) # CP2~").status == AlphaValue::Status::Unknown);
    // b+ = 9 for Hyp(5), not 3 mod 4.
    CHECK(alpha("3*Hyp(5)").status == AlphaValue::Status::Unknown);
    CHECK(alpha("Cover(2,8) # Cover(3,6) # K3").value == 5);
    CHECK(alpha("Hyp(5) # 3*CP2~").value == 5);
  }

  TEST_CASE("orientation sensitivity") {
    CHECK(alpha("Cover(2,8)").status == AlphaValue::Status::Exact);
    CHECK(alpha("Cover(2,8)").value == 2);
    CHECK(alpha("reverse(Cover(2,8))").status == AlphaValue::Status::Unknown);
  }

  TEST_CASE("scalar curvature bound") {
    CHECK(scalar_l2_lower_bound(parse("Cover(2,8)")) == 64);
    CHECK(scalar_l2_lower_bound(parse("K3")) == 0);
    CHECK(scalar_l2_lower_bound(parse("Cover(3,6) # CP2~")) == 96);
    CHECK_THROWS_AS(scalar_l2_lower_bound(parse("CP2 # 2*CP2~")), BoundUnavailable);
    CHECK_THROWS_AS(scalar_l2_lower_bound(parse("reverse(Cover(2,8))")), BoundUnavailable);
  }

  TEST_CASE("mixed bound constants") {
    const auto m = mixed_bound_constants(parse("Cover(3,6) # CP2~"));
    CHECK(m.quadratic == 2);
    CHECK(m.linear_sq_pi2 == 216);
    CHECK_FALSE(m.lower_bound_only);
    CHECK(mixed_bound_constants(parse("K3")).quadratic == 0);
    CHECK(mixed_bound_constants(parse("Cover(2,8)")).quadratic == Rational(4, 3));
    CHECK_THROWS_AS(mixed_bound_constants(parse("T4 # CP2")), BoundUnavailable);
    const auto lb = mixed_bound_constants(AlphaValue::lower_bound(3, {}));
    CHECK(lb.lower_bound_only);
  }

  TEST_CASE("known class space: numeric inf-max over a subset is at most the catalog value") {
    for (const char* text : {"Cover(3,6) # CP2~", "Hyp(5)", "Hyp(5) # 2*CP2~", "Cover(2,8) # CP2~", "CP2 # 0*CP2~"}) {
      INFO(text);
      const auto e = parse(text);
      const auto a = alpha_squared(e);
      if (a.status != AlphaValue::Status::Exact) continue;
      const QuadraticFormSpace space = known_class_space(e);
      const auto inv = invariants(e);
      CHECK(space.b_plus() == inv.b_plus);
      CHECK(space.b_minus() == inv.b_minus);
      for (const auto& c : space.classes()) {
        // Basic classes are characteristic: c.c = x.x mod 2 for every x.
        for (Eigen::Index i = 0; i < c.size(); ++i) CHECK(pos_mod(c(i), 2) == 1);
      }
      NumericOptions opts;
      opts.starts = 4;
      const auto r = alpha_squared_numeric(space, opts);
      const double exact = a.value.convert_to<double>();
      CHECK(r.value <= exact + 1e-6);
      CHECK(r.value == doctest::Approx(exact).epsilon(1e-6));
    }
    CHECK_THROWS_AS(known_class_space(parse("K3")), UnsupportedExpression);
    CHECK_THROWS_AS(known_class_space(parse("Hyp(5) # 4*CP2~")), UnsupportedExpression);
  }
}
