#include <doctest.h>

#include "fourfold/manifold.hpp"
#include "fourfold/parser.hpp"
#include "generators.hpp"

using namespace fourfold;

namespace {

ManifoldExpr at(const Atom& a) {
  return ManifoldExpr::atom(a);
}

}  // namespace

TEST_SUITE("manifold-algebra") {
  TEST_CASE("reversal of a sum swaps CP2 and CP2~ and sorting restores the order") {
    const auto e = ManifoldExpr::reverse(ManifoldExpr::sum({{at(Atom::cp2()), 1}, {at(Atom::cp2_rev()), 1}}));
    const auto n = normalize(e);
    const AtomCounts expected{{Atom::cp2(), 1}, {Atom::cp2_rev(), 1}};
    CHECK(atoms(n) == expected);
    CHECK(n == normalize(ManifoldExpr::sum({{at(Atom::cp2()), 1}, {at(Atom::cp2_rev()), 1}})));
  }

  TEST_CASE("nested sums flatten with run-length counts") {
    const auto inner = ManifoldExpr::sum({{at(Atom::cp2()), 1}, {at(Atom::cp2()), 1}});
    const auto e = normalize(ManifoldExpr::sum({{inner, 1}, {at(Atom::cp2_rev()), 1}}));
    const AtomCounts expected{{Atom::cp2(), 2}, {Atom::cp2_rev(), 1}};
    CHECK(atoms(e) == expected);
    CHECK(e.kind() == ManifoldExpr::Kind::Sum);
    CHECK(e.summands().size() == 2);
  }

  TEST_CASE("reversed K3 is a reversed quartic") {
    const auto e = reverse(at(Atom::k3()));
    REQUIRE(e.kind() == ManifoldExpr::Kind::Atom);
    CHECK(e.as_atom().is_k3());
    CHECK(e.as_atom().reversed());
    CHECK(Atom::k3() == Atom::hypersurface(4));
  }

  TEST_CASE("reverse on single atoms") {
    CHECK(reverse(at(Atom::cp2())) == at(Atom::cp2_rev()));
    CHECK(reverse(at(Atom::s4())) == at(Atom::s4()));
    CHECK(reverse(at(Atom::s2xs2())) == at(Atom::s2xs2()));
    const auto c = reverse(at(Atom::cyclic_cover(3, 6)));
    CHECK(c.as_atom().tag() == AtomTag::CyclicCover);
    CHECK(c.as_atom().reversed());
    CHECK(c.as_atom().cover_order() == 3);
    CHECK(c.as_atom().degree() == 6);
  }

  TEST_CASE("atoms of the worked examples") {
    const AtomCounts m{{Atom::cyclic_cover(3, 6), 1}, {Atom::cp2_rev(), 1}};
    CHECK(atoms(ManifoldExpr::sum({{at(Atom::cyclic_cover(3, 6)), 1}, {at(Atom::cp2_rev()), 1}})) == m);
    CHECK(atoms(at(Atom::t4())) == AtomCounts{{Atom::t4(), 1}});
    const AtomCounts k{{Atom::cp2(), 7}, {Atom::cp2_rev(), 37}};
    CHECK(atoms(ManifoldExpr::sum({{at(Atom::cp2()), 7}, {at(Atom::cp2_rev()), 37}})) == k);
  }

  TEST_CASE("S4 is the unit and an empty sum is S4") {
    CHECK(normalize(ManifoldExpr::sum({{at(Atom::s4()), 3}, {at(Atom::k3()), 1}})) == at(Atom::k3()));
    CHECK(normalize(ManifoldExpr::sum({{at(Atom::k3()), 0}})) == at(Atom::s4()));
    CHECK(atoms(at(Atom::s4())).empty());
  }

  TEST_CASE("blow_up and connected_sum") {
    CHECK(blow_up(at(Atom::cyclic_cover(3, 6)), 1) ==
          normalize(ManifoldExpr::sum({{at(Atom::cyclic_cover(3, 6)), 1}, {at(Atom::cp2_rev()), 1}})));
    CHECK(connected_sum(at(Atom::cp2()), at(Atom::cp2())) == normalize(ManifoldExpr::sum({{at(Atom::cp2()), 2}})));
  }

  TEST_CASE("atom parameter validation") {
    CHECK_THROWS_AS(Atom::hypersurface(0), DomainError);
    CHECK_THROWS_AS(Atom::cyclic_cover(3, 7), DomainError);
    CHECK_THROWS_AS(Atom::cyclic_cover(1, 4), DomainError);
    CHECK_THROWS_AS(Atom::cyclic_cover(2, 0), DomainError);
    CHECK_THROWS_AS(ManifoldExpr::sum({{at(Atom::cp2()), -1}}), DomainError);
    SurfaceSpec s;
    s.c1sq = 1;
    s.chi_h = 1;
    s.ample_K = true;
    s.minimal = false;
    CHECK_THROWS_AS(Atom::surface(s), DomainError);
    s.minimal = true;
    CHECK_NOTHROW(Atom::surface(s));  // Godeaux-type numbers
    s.chi_h = 0;
    CHECK_THROWS_AS(Atom::surface(s), DomainError);
  }

  TEST_CASE("low-degree hypersurfaces are identified with CP2 and S2xS2") {
    CHECK(Atom::hypersurface(1) == Atom::cp2());
    CHECK(Atom::hypersurface(2) == Atom::s2xs2());
  }

  TEST_CASE("property: normalize is idempotent, reverse an involution, sums commute") {
    testgen::Rng rng(101);
    for (int i = 0; i < 2000; ++i) {
      const auto e = testgen::random_expr(rng);
      const auto n = normalize(e);
      REQUIRE(normalize(n) == n);
      REQUIRE(is_canonical(n));
      REQUIRE(reverse(reverse(n)) == n);
      REQUIRE(reverse(e) == reverse(n));

      const auto f = testgen::random_expr(rng);
      REQUIRE(connected_sum(e, f) == connected_sum(f, e));
      const auto g = testgen::random_expr(rng);
      REQUIRE(connected_sum(connected_sum(e, f), g) == connected_sum(e, connected_sum(f, g)));
      REQUIRE(reverse(connected_sum(e, f)) == connected_sum(reverse(e), reverse(f)));
    }
  }
}
