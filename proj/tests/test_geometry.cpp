#include <doctest.h>

#include <cmath>
#include <random>

#include "umbilic/geometry.hpp"
#include "umbilic/system.hpp"

using namespace umbilic;

TEST_CASE("psi satisfies the critical-manifold equations exactly") {
  auto p0 = psi(0, 0, 0);
  CHECK(p0.b == 0);
  CHECK(p0.c == 0);
  auto p1 = psi(1, 1, 2);
  CHECK(p1.b == -3);
  CHECK(p1.c == -3);
  auto p2 = psi(-1, -1, 0);
  CHECK(p2.b == -1);
  CHECK(p2.c == -1);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-3, 3);
  for (int i = 0; i < 1000; ++i) {
    auto p = psi(d(rng), d(rng), d(rng));
    auto g = potential_grad_hess(p).grad;
    CHECK(g[0] == 0.0);
    CHECK(g[1] == 0.0);
  }
}

TEST_CASE("catastrophe map and its jacobian") {
  auto c0 = catastrophe_map(0, 0, 0);
  CHECK(c0 == std::array<double, 3>{0, 0, 0});
  auto c1 = catastrophe_map(1, 1, 2);
  CHECK(c1 == std::array<double, 3>{2, -3, -3});
  CHECK(catastrophe_jacobian_det(1, 1, 0) == 4.0);

  // det D(pi~) computed from exact polynomial derivatives equals 4xy - a^2
  // at the coefficient level.
  auto polys = catastrophe_map_polys();
  std::array<int, 3> vars = {VarX, VarY, VarA};
  PolyExpr J[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) J[i][j] = polys[i].differentiate(vars[j]);
  PolyExpr det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                 J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                 J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
  CHECK(det == PolyExpr::parse("4*x*y - a^2"));
}

TEST_CASE("stratify classifies the named examples") {
  CHECK(stratify(-1, -1, 0) == StratumLabel::RegularAttracting);
  CHECK(stratify(1, 1, 2) == StratumLabel::Cusp);
  CHECK(stratify(1, 0.25, 1) == StratumLabel::Fold);
  CHECK(stratify(0, 0, 0) == StratumLabel::HyperbolicUmbilic);
  CHECK(stratify(1, 1, 0) == StratumLabel::RegularRepelling);
  CHECK(stratify(1, -1, 0) == StratumLabel::RegularSaddle);
  // fold example from the potential: det hess = 0 at (1, 1/4, 1)
  CHECK(potential_grad_hess(psi(1, 0.25, 1)).hess_det == 0.0);
}

TEST_CASE("stratify is invariant under the x<->y relabeling") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-2, 2);
  for (int i = 0; i < 500; ++i) {
    double x = d(rng), y = d(rng), a = d(rng);
    CHECK(stratify(x, y, a) == stratify(y, x, a));
  }
  // also on the cone
  CHECK(stratify(0.25, 1, 1) == stratify(1, 0.25, 1));
}
