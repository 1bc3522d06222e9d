#include <doctest.h>

#include <cmath>

#include "umbilic/airy.hpp"
#include "umbilic/blowup.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/ode.hpp"
#include "umbilic/riccati.hpp"
#include "umbilic/system.hpp"

using namespace umbilic;

namespace {

// Five-point numerical derivative of the dividing solution.
double dividing_derivative(double B0, double t, double h) {
  auto f = [&](double tt) { return dividing_solution(B0, tt); };
  return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h);
}

}  // namespace

TEST_CASE("dividing solution values") {
  CHECK(dividing_solution(1.0, 0.0) == doctest::Approx(-0.72901113294722698).epsilon(1e-10));
  // Backward asymptotics onto the parabola branch: x ~ -sqrt(-B0 t).
  double far = dividing_solution(1.0, -100.0);
  CHECK(std::abs(far - (-10.0)) <= 1e-2 * 10.0);
  // Near the asymptote the error is reported.
  double M = dividing_blowup_time(1.0);
  CHECK_THROWS_AS(dividing_solution(1.0, M), AtAsymptoteError);
}

TEST_CASE("riccati residual of the dividing solution") {
  for (double B0 : {1.0, 2.0, 0.5}) {
    double M = dividing_blowup_time(B0);
    for (double t = -20.0; t <= M - 0.2; t += 0.37) {
      double h = 1e-4 * std::max(1.0, std::abs(t));
      double lhs = dividing_derivative(B0, t, h);
      double x = dividing_solution(B0, t);
      CHECK(std::abs(lhs - (x * x + B0 * t)) <= 1e-9 * std::max(1.0, x * x));
    }
  }
}

TEST_CASE("finite-d solutions do not follow the parabola") {
  // Distinguishability: at t = -50 the d = 1 solution is far from
  // -sqrt(-B0 t) while the dividing one hugs it.
  double t = -50.0;
  double div = dividing_solution(1.0, t);
  double other = dividing_solution(1.0, t, 1.0);
  double parab = -std::sqrt(50.0);
  CHECK(std::abs(div / parab - 1.0) < 1e-2);
  CHECK(std::abs(other / parab - 1.0) > 0.5);
}

TEST_CASE("gamma family structure") {
  auto g = gamma_family(1, 1, 0, 0);
  CHECK(g.x2 == doctest::Approx(-0.72901113294722698));
  CHECK(g.y2 == doctest::Approx(-0.72901113294722698));
  CHECK(g.b2 == 0.0);
  CHECK(g.c2 == 0.0);

  // Conserved C0 b2 - B0 c2 = -B0 C0 s.
  for (double s : {-0.3, 0.0, 0.7}) {
    for (double t : {-3.0, -1.0, 0.2}) {
      double B0 = 2, C0 = 1;
      if (t >= std::min(dividing_blowup_time(B0), dividing_blowup_time(C0) - s))
        continue;
      auto gs = gamma_family(B0, C0, s, t);
      CHECK(C0 * gs.b2 - B0 * gs.c2 == doctest::Approx(-B0 * C0 * s).epsilon(1e-12));
    }
  }

  // Backward arrival at zeta2: x2 / (-y2) -> -sqrt(B0/C0).
  auto far = gamma_family(2, 1, 0.3, -100.0);
  CHECK(std::abs(far.x2 / (-far.y2) - (-std::sqrt(2.0))) <= 1e-2 * std::sqrt(2.0));

  CHECK_THROWS_AS(gamma_family(1, 1, 0, 3.0), BeyondBlowupTimeError);
}

TEST_CASE("gamma family satisfies the rescaling-chart field") {
  // ODE residual against the blown-up field on the sphere at a2 = 0.
  BlowupAtlas atlas(FastSlowSystem::constant_drift(-1, 2, 1));
  double B0 = 2, C0 = 1, s = 0.2;
  for (double t = -5.0; t < std::min(dividing_blowup_time(B0),
                                     dividing_blowup_time(C0) - s) -
                                0.2;
       t += 0.23) {
    auto g = gamma_family(B0, C0, s, t);
    ChartPoint p{ChartId::Eps, {g.x2, g.y2, 0.0, g.b2, g.c2, 0.0}};
    auto v = atlas.field(p);
    double h = 1e-4 * std::max(1.0, std::abs(t));
    double dx = (-gamma_family(B0, C0, s, t + 2 * h).x2 +
                 8 * gamma_family(B0, C0, s, t + h).x2 -
                 8 * gamma_family(B0, C0, s, t - h).x2 +
                 gamma_family(B0, C0, s, t - 2 * h).x2) /
                (12 * h);
    double dy = (-gamma_family(B0, C0, s, t + 2 * h).y2 +
                 8 * gamma_family(B0, C0, s, t + h).y2 -
                 8 * gamma_family(B0, C0, s, t - h).y2 +
                 gamma_family(B0, C0, s, t - 2 * h).y2) /
                (12 * h);
    CHECK(std::abs(dx - v[0]) <= 1e-9 * std::max(1.0, std::abs(v[0])));
    CHECK(std::abs(dy - v[1]) <= 1e-9 * std::max(1.0, std::abs(v[1])));
    CHECK(v[3] == doctest::Approx(B0));
    CHECK(v[4] == doctest::Approx(C0));
  }
}

TEST_CASE("numerical integration tracks the closed form") {
  double B0 = 2, C0 = 1, s = 0.1;
  const OdeField f = [&](const double* u, double* du) {
    du[0] = u[0] * u[0] + u[2];  // x2' = x2^2 + b2
    du[1] = u[1] * u[1] + u[3];  // y2' = y2^2 + c2
    du[2] = B0;
    du[3] = C0;
  };
  auto g0 = gamma_family(B0, C0, s, -5.0);
  std::array<double, 4> u0 = {g0.x2, g0.y2, g0.b2, g0.c2};
  double t_end = std::min(dividing_blowup_time(B0), dividing_blowup_time(C0) - s) - 0.2;
  IntegratorConfig cfg;
  cfg.rtol = 1e-11;
  cfg.atol = 1e-13;
  auto traj = integrate(f, 4, u0, -5.0, t_end, cfg);
  REQUIRE(traj.terminal_reason == TerminalReason::TimeEnd);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    auto g = gamma_family(B0, C0, s, traj.time(i));
    CHECK(std::abs(traj.state(i)[0] - g.x2) <= 1e-6 * std::max(1.0, std::abs(g.x2)));
    CHECK(std::abs(traj.state(i)[1] - g.y2) <= 1e-6 * std::max(1.0, std::abs(g.y2)));
  }
}

TEST_CASE("s0 threshold and classification") {
  CHECK(s_critical(1, 1) == 0.0);
  CHECK(std::abs(s_critical(2, 1) - 0.48235032897052856) <= 1e-9);
  CHECK(std::abs(s_critical(2, 1) - 0.4823506) <= 1e-5);

  CHECK(classify_gamma(1, 1, 0) == GammaClass::Q5);
  CHECK(classify_gamma(2, 1, s_critical(2, 1) + 0.1) == GammaClass::Q4);
  CHECK(classify_gamma(2, 1, s_critical(2, 1) - 0.1) == GammaClass::Q6);
  CHECK(classify_gamma(2, 1, s_critical(2, 1)) == GammaClass::Q5);
}

TEST_CASE("forward blow-up direction matches the classification") {
  // Direct integration up to just before blow-up: the x5 trend has the sign
  // that the classification predicts.
  double B0 = 2, C0 = 1;
  double s0 = s_critical(B0, C0);
  for (int k = 0; k < 50; ++k) {
    double s = s0 + (k - 25) * 0.08;
    if (std::abs(s - s0) < 1e-3) continue;
    double t_end = 0.99 * std::min(dividing_blowup_time(B0), dividing_blowup_time(C0) - s);
    double t0 = std::min(-5.0, t_end - 1.0);
    auto g = gamma_family(B0, C0, s, t0);
    const OdeField f = [&](const double* u, double* du) {
      du[0] = u[0] * u[0] + u[2];
      du[1] = u[1] * u[1] + u[3];
      du[2] = B0;
      du[3] = C0;
    };
    std::array<double, 4> u0 = {g.x2, g.y2, g.b2, g.c2};
    IntegratorConfig cfg;
    cfg.escape_radius = 1e7;
    auto traj = integrate(f, 4, u0, t0, t_end, cfg);
    auto fs = traj.final_state();
    double x5 = (fs[0] - fs[1]) / (fs[0] + fs[1]);
    auto cls = classify_gamma(B0, C0, s);
    if (cls == GammaClass::Q6) CHECK(x5 > 0);   // x2 blows up first
    if (cls == GammaClass::Q4) CHECK(x5 < 0);   // y2 blows up first
  }
}
