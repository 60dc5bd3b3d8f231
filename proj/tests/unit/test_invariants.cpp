#include <doctest.h>

#include "fourfold/invariants.hpp"
#include "fourfold/parser.hpp"
#include "generators.hpp"

using namespace fourfold;

namespace {

struct OracleCover {
  std::int64_t p, d, chi, tau, b_plus, b_minus, chi_h;
};
struct OracleHypersurface {
  std::int64_t d, chi, tau, b_plus, b_minus, chi_h;
};

#include "oracle_invariants.inc"

}  // namespace

TEST_SUITE("invariant-engine") {
  TEST_CASE("K3") {
    const auto r = invariants(parse("K3"));
    CHECK(r.chi == 24);
    CHECK(r.tau == -16);
    CHECK(r.b_plus == 3);
    CHECK(r.b_minus == 19);
    CHECK(r.spin == Tri::Yes);
    CHECK(r.simply_connected == Tri::Yes);
    CHECK(r.scalar_flat == Tri::Yes);
    CHECK(r.psc == Tri::No);
  }

  TEST_CASE("Cover(2,8)") {
    const auto r = invariants(parse("Cover(2,8)"));
    CHECK(r.chi == 46);
    CHECK(r.tau == -30);
    CHECK(r.b_plus == 7);
    CHECK(r.b_minus == 37);
    CHECK(r.spin == Tri::No);
    REQUIRE(r.complex);
    CHECK(r.complex->c1sq == 2);
    CHECK(r.complex->chi_h == 4);
    CHECK(r.complex->ample_K);
    CHECK(noether_check(r));
  }

  TEST_CASE("Cover(3,6) and its blow-up") {
    const auto x = invariants(parse("Cover(3,6)"));
    CHECK(x.chi == 45);
    CHECK(x.tau == -29);
    REQUIRE(x.complex);
    CHECK(x.complex->c1sq == 3);
    CHECK(x.complex->chi_h == 4);
    CHECK(noether_check(x));

    const auto m = invariants(parse("Cover(3,6) # CP2~"));
    CHECK(m.chi == 46);
    CHECK(m.tau == -30);
    CHECK(m.b_plus == 7);
    CHECK(m.b_minus == 37);
    REQUIRE(m.complex);
    CHECK(m.complex->c1sq == 2);
    CHECK(m.complex->c1sq_minimal_model == 3);
    CHECK(m.complex->blowup_count == 1);
    CHECK_FALSE(m.complex->minimal);
    CHECK(m.two_chi_plus_three_tau() == 2);
  }

  TEST_CASE("cover_invariants and cover_canonical_multiple") {
    CHECK(cover_canonical_multiple(3, 6) == 1);
    CHECK(cover_canonical_multiple(2, 8) == 1);
    CHECK(cover_canonical_multiple(2, 6) == 0);
    CHECK(cover_canonical_multiple(2, 2) == -2);
    const auto r = cover_invariants(2, 2);
    CHECK(r.chi == 4);
    CHECK(r.tau == 0);
    REQUIRE(r.complex);
    CHECK(r.complex->c1sq == 8);
    CHECK_FALSE(r.complex->ample_K);
    CHECK(r.psc == Tri::Yes);
    CHECK_THROWS_AS(cover_invariants(3, 7), DomainError);
  }

  TEST_CASE("hypersurface_invariants") {
    const auto k3 = hypersurface_invariants(4);
    CHECK(k3.chi == 24);
    CHECK(k3.tau == -16);
    CHECK(k3.spin == Tri::Yes);
    const auto cp2 = hypersurface_invariants(1);
    CHECK(cp2.chi == 3);
    CHECK(cp2.tau == 1);
    const auto q = hypersurface_invariants(5);
    CHECK(q.chi == 55);
    CHECK(q.tau == -35);
    REQUIRE(q.complex);
    CHECK(q.complex->c1sq == 5);
    CHECK(q.complex->chi_h == 5);
    CHECK(q.complex->ample_K);
    CHECK(q.spin == Tri::No);
    CHECK(hypersurface_invariants(6).spin == Tri::Yes);
  }

  TEST_CASE("noether_check rejects a corrupted record") {
    auto r = invariants(parse("Cover(2,8)"));
    REQUIRE(noether_check(r));
    r.complex->chi_h = 5;
    CHECK_FALSE(noether_check(r));
    CHECK_FALSE(noether_check(invariants(parse("T4 # CP2"))));
  }

  TEST_CASE("frozen oracle table: cyclic covers") {
    for (const auto& o : kOracleCovers) {
      INFO("Cover(" << o.p << "," << o.d << ")");
      const auto r = cover_invariants(o.p, o.d);
      CHECK(r.chi == o.chi);
      CHECK(r.tau == o.tau);
      CHECK(r.b_plus == o.b_plus);
      CHECK(r.b_minus == o.b_minus);
      REQUIRE(r.complex);
      CHECK(r.complex->chi_h == o.chi_h);
      CHECK(noether_check(r));
    }
  }

  TEST_CASE("frozen oracle table: hypersurfaces") {
    for (const auto& o : kOracleHypersurfaces) {
      INFO("Hyp(" << o.d << ")");
      const auto r = hypersurface_invariants(o.d);
      CHECK(r.chi == o.chi);
      CHECK(r.tau == o.tau);
      CHECK(r.b_plus == o.b_plus);
      CHECK(r.b_minus == o.b_minus);
      REQUIRE(r.complex);
      CHECK(r.complex->chi_h == o.chi_h);
    }
  }

  TEST_CASE("T4 and non-simply-connected sums") {
    const auto t = invariants(parse("T4"));
    CHECK(t.chi == 0);
    CHECK(t.tau == 0);
    CHECK(t.b1 == 4);
    CHECK(t.simply_connected == Tri::No);
    const auto s = invariants(parse("T4 # CP2"));
    CHECK(s.simply_connected == Tri::No);
    CHECK(s.chi == 1);
    CHECK_THROWS_AS(invariants(parse("Surface(c1sq=0, chi_h=1, sc=no)")), UnsupportedExpression);
  }

  TEST_CASE("is_complex_surface_expression") {
    CHECK(is_complex_surface_expression(parse("Cover(3,6) # 4*CP2~")));
    CHECK(is_complex_surface_expression(parse("K3")));
    CHECK(is_complex_surface_expression(parse("CP2 # 2*CP2~")));
    CHECK_FALSE(is_complex_surface_expression(parse("K3 # K3")));
    CHECK_FALSE(is_complex_surface_expression(parse("reverse(K3)")));
    CHECK_FALSE(is_complex_surface_expression(parse("2*CP2~")));
  }

  TEST_CASE("property: (2chi + 3tau)(k CP2 # l CP2~) = 4 + 5k - l") {
    for (std::int64_t k = 1; k < 30; ++k) {
      for (std::int64_t l = 0; l < 60; ++l) {
        const auto e = normalize(ManifoldExpr::sum(
            {{ManifoldExpr::atom(Atom::cp2()), k}, {ManifoldExpr::atom(Atom::cp2_rev()), l}}));
        REQUIRE(invariants(e).two_chi_plus_three_tau() == 4 + 5 * k - l);
      }
    }
  }

  TEST_CASE("property: Betti identities, reversal, additivity, Rokhlin") {
    testgen::Rng rng(404);
    int checked = 0;
    for (int i = 0; i < 3000; ++i) {
      const auto e = normalize(testgen::random_expr(rng));
      InvariantRecord r;
      try {
        r = invariants(e);
      } catch (const UnsupportedExpression&) {
        continue;
      }
      ++checked;
      INFO(format(e));
      if (r.simply_connected == Tri::Yes) {
        REQUIRE(r.chi - 2 == r.b_plus + r.b_minus);
        REQUIRE(r.tau == r.b_plus - r.b_minus);
      }
      if (r.spin == Tri::Yes) REQUIRE(pos_mod(r.tau, 16) == 0);

      const auto rr = invariants(reverse(e));
      REQUIRE(rr.chi == r.chi);
      REQUIRE(rr.tau == -r.tau);
      REQUIRE(rr.b_plus == r.b_minus);
      REQUIRE(rr.b_minus == r.b_plus);
      REQUIRE(rr.spin == r.spin);
      REQUIRE(rr.simply_connected == r.simply_connected);

      const auto f = normalize(testgen::random_expr(rng, 1));
      InvariantRecord rf;
      try {
        rf = invariants(f);
      } catch (const UnsupportedExpression&) {
        continue;
      }
      const bool f_empty = atoms(f).empty();
      const bool e_empty = atoms(e).empty();
      const auto sum = invariants(connected_sum(e, f));
      REQUIRE(sum.tau == r.tau + rf.tau);
      if (!f_empty && !e_empty) REQUIRE(sum.chi == r.chi + rf.chi - 2);
      REQUIRE(sum.b_plus == r.b_plus + rf.b_plus);
    }
    CHECK(checked > 2000);
  }
}
