#include <doctest.h>

#include <cmath>
#include <random>

#include "umbilic/errors.hpp"
#include "umbilic/poly.hpp"

using namespace umbilic;

TEST_CASE("parse basic polynomials") {
  auto p = PolyExpr::parse("x^2 + a*y + b");
  CHECK(p.num_terms() == 3);
  CHECK(p.eval({2, 3, 5, 7, 0, 0}) == doctest::Approx(4 + 15 + 7));

  auto c = PolyExpr::parse("-1");
  CHECK(c.num_terms() == 1);
  CHECK(c.eval({1, 2, 3, 4, 5, 6}) == -1.0);

  auto q = PolyExpr::parse("2*x*y - a^2");
  CHECK(q.eval({1, 1, 0, 0, 0, 0}) == 2.0);
  CHECK(q.eval({1, 2, 3, 0, 0, 0}) == doctest::Approx(4 - 9));

  CHECK(PolyExpr::parse("0").is_zero());
  CHECK(PolyExpr::parse("x - x").is_zero());
  CHECK(PolyExpr::parse("0.5*eps^3").eval({0, 0, 0, 0, 0, 2}) == doctest::Approx(4.0));
}

TEST_CASE("parse errors carry byte offsets") {
  CHECK_THROWS_AS(PolyExpr::parse("x + q"), ParseError);
  CHECK_THROWS_AS(PolyExpr::parse("x^16"), ParseError);
  CHECK_THROWS_AS(PolyExpr::parse("x +"), ParseError);
  CHECK_THROWS_AS(PolyExpr::parse(""), ParseError);
  CHECK_THROWS_AS(PolyExpr::parse("x ^ y"), ParseError);
  try {
    PolyExpr::parse("x + zz");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("differentiate exact cases") {
  auto p = PolyExpr::parse("x^2 + a*y + b");
  CHECK(p.differentiate(VarX) == PolyExpr::parse("2*x"));
  CHECK(p.differentiate(VarA) == PolyExpr::parse("y"));
  CHECK(PolyExpr::parse("5").differentiate(VarY).is_zero());
}

TEST_CASE("differentiate matches central finite differences") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  auto p = PolyExpr::parse("x^3 - 2*x*y*a + b^2*c - eps*x + 0.25*y^2");
  const double h = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    std::array<double, kPolyVars> v;
    for (auto& vi : v) vi = dist(rng);
    for (int var = 0; var < kPolyVars; ++var) {
      auto vp = v, vm = v;
      vp[var] += h;
      vm[var] -= h;
      double fd = (p.eval(vp) - p.eval(vm)) / (2 * h);
      double ex = p.differentiate(var).eval(v);
      CHECK(std::abs(fd - ex) <= 1e-7 * std::max(1.0, std::abs(ex)));
    }
  }
}

TEST_CASE("compose substitutes polynomials") {
  auto p = PolyExpr::parse("x^2 + y");
  std::array<PolyExpr, kPolyVars> subs = {
      PolyExpr::parse("a + 1"), PolyExpr::parse("b^2"), PolyExpr(),
      PolyExpr(),               PolyExpr(),             PolyExpr()};
  auto q = p.compose(subs);
  // (a+1)^2 + b^2
  CHECK(q == PolyExpr::parse("a^2 + 2*a + 1 + b^2"));
}

TEST_CASE("monomial division is exact") {
  auto p = PolyExpr::parse("2*x^3*y - 4*x^2*y^2");
  Exponents e{};
  e[VarX] = 2;
  e[VarY] = 1;
  auto q = p.divide_by_monomial(e, 2.0);
  CHECK(q == PolyExpr::parse("x - 2*y"));
  CHECK_THROWS(PolyExpr::parse("x + y").divide_by_monomial(e, 1.0));
}

TEST_CASE("to_string round trip") {
  auto p = PolyExpr::parse("x^2 - 3*a*y + 0.5*eps - 1");
  auto q = PolyExpr::parse(p.to_string());
  CHECK(p == q);
}
