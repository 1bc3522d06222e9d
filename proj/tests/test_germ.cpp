#include <doctest.h>

#include <algorithm>

#include "umbilic/errors.hpp"
#include "umbilic/germ.hpp"

using namespace umbilic;

namespace {
bool has(const GermCodimension& g, const std::string& m) {
  return std::find(g.basis.begin(), g.basis.end(), m) != g.basis.end();
}
}  // namespace

TEST_CASE("table of catastrophe codimensions") {
  CHECK(germ_codimension(PolyExpr::parse("x^3")).codim == 1);
  CHECK(germ_codimension(PolyExpr::parse("x^4")).codim == 2);
  auto hu = germ_codimension(PolyExpr::parse("x^3 + y^3"));
  CHECK(hu.codim == 3);
  CHECK(has(hu, "x"));
  CHECK(has(hu, "y"));
  CHECK(has(hu, "x*y"));
  CHECK(germ_codimension(PolyExpr::parse("x^5"), 8).codim == 3);
}

TEST_CASE("alternative umbilic germ y^3/3 + y*x^2") {
  auto g = germ_codimension(PolyExpr::parse("0.3333333333333333*y^3 + y*x^2"));
  CHECK(g.codim == 3);
  CHECK(has(g, "x"));
  CHECK(has(g, "y"));
  // The degree-2 class survives with exactly one representative; y^2 - x^2
  // reduces to it modulo the Jacobi ideal (x^2 + y^2 is a generator).
  int deg2 = 0;
  for (const auto& b : g.basis)
    if (b == "x^2" || b == "x*y" || b == "y^2") ++deg2;
  CHECK(deg2 == 1);
}

TEST_CASE("nondegenerate quadratic forms have codimension 0") {
  CHECK(germ_codimension(PolyExpr::parse("x^2 + y^2")).codim == 0);
  CHECK(germ_codimension(PolyExpr::parse("x^2 - y^2")).codim == 0);
  CHECK(germ_codimension(PolyExpr::parse("x*y")).codim == 0);
  CHECK(germ_codimension(PolyExpr::parse("x^2")).codim == 0);
}

TEST_CASE("errors") {
  // x^3 viewed with a dormant second variable never stabilizes.
  CHECK_THROWS_AS(germ_codimension(PolyExpr::parse("x^3 + 0.0001*y^15"), 6),
                  DegreeTooLowError);
  CHECK_THROWS(germ_codimension(PolyExpr::parse("x")));
  CHECK_THROWS(germ_codimension(PolyExpr::parse("x^2 + a^2")));
  CHECK_THROWS(germ_codimension(PolyExpr::parse("1 + x^2")));
}
