#include <doctest.h>

#include <cmath>

#include "fourfold/numeric_alpha.hpp"
#include "generators.hpp"

using namespace fourfold;

namespace {

struct OracleAlphaCase {
  int n;
  std::vector<std::int64_t> gram;
  std::vector<std::vector<std::int64_t>> classes;
  double value;
};

#include "oracle_alpha.inc"

QuadraticFormSpace make_space(const OracleAlphaCase& c) {
  IntMatrix g(c.n, c.n);
  for (int i = 0; i < c.n; ++i)
    for (int j = 0; j < c.n; ++j) g(i, j) = c.gram[static_cast<std::size_t>(i * c.n + j)];
  std::vector<IntVector> classes;
  for (const auto& v : c.classes) classes.push_back(Eigen::Map<const IntVector>(v.data(), c.n));
  return QuadraticFormSpace(g, classes);
}

IntMatrix diag(std::initializer_list<std::int64_t> d) {
  IntVector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (auto x : d) v(i++) = x;
  return v.asDiagonal();
}

IntVector vec(std::initializer_list<std::int64_t> d) {
  IntVector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (auto x : d) v(i++) = x;
  return v;
}

}  // namespace

TEST_SUITE("alpha-numeric") {
  TEST_CASE("frozen semidefinite-program values") {
    for (const auto& c : kOracleAlpha) {
      const auto space = make_space(c);
      const auto r = alpha_squared_numeric(space);
      INFO("n=" << c.n << " value=" << c.value);
      CHECK(r.value == doctest::Approx(c.value).epsilon(1e-6).scale(1.0));
    }
  }

  TEST_CASE("single positive class") {
    const QuadraticFormSpace s(diag({1, 1, -1, -1}), {vec({1, 1, 1, 0})});
    REQUIRE(s.pairing(s.classes()[0], s.classes()[0]) == 1);
    CHECK(alpha_squared_numeric(s).value == doctest::Approx(1.0).epsilon(1e-9));
    const QuadraticFormSpace t(diag({1, 1, -1}), {vec({2, 1, 1})});
    CHECK(alpha_squared_numeric(t).value == doctest::Approx(4.0).epsilon(1e-9));
    const QuadraticFormSpace u(diag({1, 1, 1, -1}), {vec({1, 1, 1, 0})});
    CHECK(alpha_squared_numeric(u).value == doctest::Approx(3.0).epsilon(1e-9));
  }

  TEST_CASE("a and -a give the same value") {
    const QuadraticFormSpace s(diag({1, 1, -1}), {vec({1, 0, 1}), vec({0, 1, 1})});
    const auto with_neg = s.with_classes({vec({1, 0, 1}), vec({0, 1, 1}), vec({-1, 0, -1}), vec({0, -1, -1})});
    CHECK(alpha_squared_numeric(s).value == doctest::Approx(alpha_squared_numeric(with_neg).value).epsilon(1e-7));
    const auto oracle = alpha_brute_oracle(s);
    CHECK(alpha_squared_numeric(s).value == doctest::Approx(oracle.value).epsilon(1e-4));
  }

  TEST_CASE("orthogonal positive classes are both contained in the optimal plane") {
    const QuadraticFormSpace s(diag({1, 1, -1}), {vec({1, 0, 0}), vec({0, 2, 0})});
    CHECK(alpha_squared_numeric(s).value == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(alpha_brute_oracle(s).value == doctest::Approx(4.0).epsilon(1e-6));
  }

  TEST_CASE("negative class: the plane orthogonal to it gives zero") {
    const QuadraticFormSpace s(diag({1, -1}), {vec({1, 2})});
    const auto r = alpha_squared_numeric(s);
    CHECK(r.value == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
    CHECK_FALSE(r.near_boundary);
    const auto o = alpha_brute_oracle(s);
    CHECK(o.value < 1e-6);
    CHECK(o.attained);
  }

  TEST_CASE("null class with b+ = b- = 1: value decreases to zero at the boundary") {
    const QuadraticFormSpace s(diag({1, -1}), {vec({1, 1})});
    const auto r = alpha_squared_numeric(s);
    CHECK(r.value < 1e-5);
    CHECK(r.near_boundary);
    CHECK_FALSE(alpha_brute_oracle(s).attained);
  }

  TEST_CASE("b- = 0 is the maximum of Q(a, a)") {
    const QuadraticFormSpace s(diag({1, 1}), {vec({1, 1}), vec({0, 3})});
    const auto r = alpha_squared_numeric(s);
    CHECK(r.value == doctest::Approx(9.0));
    CHECK(r.witness.basis.cols() == 2);
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(QuadraticFormSpace(diag({1, 0}), {vec({1, 0})}), DegenerateForm);
    CHECK_THROWS_AS(QuadraticFormSpace(diag({1, 2}), {vec({1, 0})}), DomainError);
    CHECK_THROWS_AS(alpha_squared_numeric(QuadraticFormSpace(diag({-1, -1}), {vec({1, 0})})), DomainError);
    CHECK_THROWS_AS(alpha_squared_numeric(QuadraticFormSpace(diag({1, -1}), {})), DomainError);
    CHECK_THROWS_AS(alpha_brute_oracle(QuadraticFormSpace(diag({1, -1, 1, -1, 1, -1, -1}), {vec({1, 0, 0, 0, 0, 0, 0})})),
                    ScaleError);
    CHECK_THROWS_AS(QuadraticFormSpace::from_text("1 0\n0\n", "1 0\n"), DomainError);
    CHECK_THROWS_AS(QuadraticFormSpace::from_text("1 0\n0 -1\n", "1 0 0\n"), DomainError);
    CHECK_THROWS_AS(QuadraticFormSpace::from_text("1 x\n0 -1\n", "1 0\n"), DomainError);
  }

  TEST_CASE("text format") {
    const auto s = QuadraticFormSpace::from_text("# hyperbolic plane\n0 1\n1 0\n\n", "1 1\n# comment\n1 -1\n");
    CHECK(s.dimension() == 2);
    CHECK(s.b_plus() == 1);
    CHECK(s.b_minus() == 1);
    CHECK(s.classes().size() == 2);
    CHECK(s.determinant() == -1);
  }

  TEST_CASE("chart gradient matches central differences") {
    testgen::Rng rng(505);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = static_cast<int>(testgen::uniform(rng, 2, 5));
      const auto f = testgen::random_unimodular_form(rng, n);
      const QuadraticFormSpace s(f.gram, testgen::random_classes(rng, n, 3));
      if (s.b_minus() == 0) continue;
      Eigen::MatrixXd l = Eigen::MatrixXd::Random(s.b_minus(), s.b_plus());
      l *= 0.6 / Eigen::JacobiSVD<Eigen::MatrixXd>(l).singularValues()(0);
      const auto ev = chart_objective(s, l);
      REQUIRE(ev.values.size() == 3);
      const Eigen::MatrixXd basis = chart_basis(s, l);
      for (std::size_t k = 0; k < 3; ++k) {
        CHECK(ev.values(static_cast<Eigen::Index>(k)) ==
              doctest::Approx(projection_split(s, basis, s.classes()[k]).first).epsilon(1e-9));
        const double h = 1e-6;
        for (Eigen::Index i = 0; i < l.size(); ++i) {
          Eigen::MatrixXd up = l;
          Eigen::MatrixXd dn = l;
          up.data()[i] += h;
          dn.data()[i] -= h;
          const double fd = (chart_objective(s, up).values(static_cast<Eigen::Index>(k)) -
                             chart_objective(s, dn).values(static_cast<Eigen::Index>(k))) /
                            (2 * h);
          CHECK(ev.gradients[k].data()[i] == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
        }
      }
    }
    const QuadraticFormSpace s(diag({1, -1}), {vec({1, 0})});
    Eigen::MatrixXd outside(1, 1);
    outside(0, 0) = 1.5;
    CHECK(chart_objective(s, outside).values.size() == 0);
  }

  TEST_CASE("property: projection identity on random planes") {
    testgen::Rng rng(606);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = static_cast<int>(testgen::uniform(rng, 2, 6));
      const auto f = testgen::random_unimodular_form(rng, n);
      const QuadraticFormSpace s(f.gram, testgen::random_classes(rng, n, 3, 3));
      Eigen::MatrixXd l = Eigen::MatrixXd::Random(s.b_minus(), s.b_plus());
      if (l.size() > 0) l *= 0.95 / std::max(1.0, Eigen::JacobiSVD<Eigen::MatrixXd>(l).singularValues()(0));
      const Eigen::MatrixXd basis = chart_basis(s, l);
      // Q positive definite on the plane: leading principal minors.
      const Eigen::MatrixXd restricted = basis.transpose() * s.gram().cast<double>() * basis;
      for (Eigen::Index k = 1; k <= restricted.rows(); ++k) CHECK(restricted.topLeftCorner(k, k).determinant() > 0);
      for (const auto& a : s.classes()) {
        const auto [plus, minus] = projection_split(s, basis, a);
        const double square = static_cast<double>(s.pairing(a, a));
        CHECK(plus + minus == doctest::Approx(square).epsilon(1e-10).scale(1.0));
        CHECK(plus >= -1e-10);
        CHECK(minus <= 1e-10);
      }
    }
  }

  TEST_CASE("property: adding classes never decreases the value") {
    testgen::Rng rng(707);
    NumericOptions opts;
    opts.starts = 6;
    for (int trial = 0; trial < 25; ++trial) {
      const int n = static_cast<int>(testgen::uniform(rng, 2, 5));
      const auto f = testgen::random_unimodular_form(rng, n);
      auto classes = testgen::random_classes(rng, n, 2);
      const double base = alpha_squared_numeric(QuadraticFormSpace(f.gram, classes), opts).value;
      classes.push_back(testgen::random_classes(rng, n, 1).front());
      const double more = alpha_squared_numeric(QuadraticFormSpace(f.gram, classes), opts).value;
      CHECK(more >= base - 1e-6 * std::max(1.0, std::abs(base)));
    }
  }

  TEST_CASE("property: integral isometries leave the value unchanged") {
    testgen::Rng rng(808);
    NumericOptions opts;
    opts.starts = 6;
    for (int trial = 0; trial < 25; ++trial) {
      const int n = static_cast<int>(testgen::uniform(rng, 2, 5));
      const auto f = testgen::random_unimodular_form(rng, n);
      const IntMatrix g = testgen::random_isometry(rng, f);
      REQUIRE(g.transpose() * f.gram * g == f.gram);
      const auto classes = testgen::random_classes(rng, n, 3);
      std::vector<IntVector> moved;
      for (const auto& a : classes) moved.push_back(g * a);
      const double v1 = alpha_squared_numeric(QuadraticFormSpace(f.gram, classes), opts).value;
      const double v2 = alpha_squared_numeric(QuadraticFormSpace(f.gram, moved), opts).value;
      CHECK(v1 == doctest::Approx(v2).epsilon(1e-6).scale(1.0));
    }
  }

  TEST_CASE("determinism across seeds and thread counts") {
    testgen::Rng rng(909);
    const auto f = testgen::random_unimodular_form(rng, 5);
    const QuadraticFormSpace s(f.gram, testgen::random_classes(rng, 5, 4));
    NumericOptions one;
    one.threads = 1;
    one.seed = 17;
    NumericOptions many = one;
    many.threads = 4;
    const auto a = alpha_squared_numeric(s, one);
    const auto b = alpha_squared_numeric(s, many);
    CHECK(a.value == b.value);
    CHECK(a.iterations == b.iterations);
    CHECK(a.witness.basis == b.witness.basis);
  }
}
