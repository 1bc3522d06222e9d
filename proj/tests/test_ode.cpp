#include <doctest.h>

#include <cmath>

#include "umbilic/airy.hpp"
#include "umbilic/ode.hpp"

using namespace umbilic;

namespace {

// Dividing solution of x' = x^2 + t (unit drift), via the Airy quotient.
double riccati_dividing(double t) {
  auto e = airy(-t);
  return e.Aip / e.Ai;
}

const OdeField kDecay = [](const double* s, double* ds) { ds[0] = -s[0]; };
const OdeField kRiccati = [](const double* s, double* ds) {
  ds[0] = s[0] * s[0] + s[1];
  ds[1] = 1.0;
};

}  // namespace

TEST_CASE("linear decay reaches exp(-1)") {
  double s0 = 1.0;
  auto traj = integrate(kDecay, 1, {&s0, 1}, 0.0, 1.0);
  CHECK(traj.terminal_reason == TerminalReason::TimeEnd);
  CHECK(std::abs(traj.final_state()[0] - std::exp(-1.0)) < 1e-8);
}

TEST_CASE("constant field is constant") {
  const OdeField zero = [](const double*, double* ds) { ds[0] = 0.0; };
  double s0 = 0.7;
  auto traj = integrate(zero, 1, {&s0, 1}, 0.0, 3.0);
  for (std::size_t i = 0; i < traj.size(); ++i) CHECK(traj.state(i)[0] == 0.7);
}

TEST_CASE("riccati tracks the dividing solution") {
  double s0[2] = {riccati_dividing(-5.0), -5.0};
  auto traj = integrate(kRiccati, 2, s0, -5.0, 0.0);
  CHECK(traj.terminal_reason == TerminalReason::TimeEnd);
  CHECK(std::abs(traj.final_state()[0] - (-0.72901113294722698)) < 1e-6);
}

TEST_CASE("tolerance order check on the riccati test") {
  double s0[2] = {riccati_dividing(-5.0), -5.0};
  IntegratorConfig tight;
  tight.rtol = 1e-13;
  tight.atol = 1e-14;
  double ref = integrate(kRiccati, 2, s0, -5.0, 0.0, tight).final_state()[0];

  IntegratorConfig loose;
  loose.rtol = 1e-6;
  loose.atol = 1e-8;
  double e1 = std::abs(integrate(kRiccati, 2, s0, -5.0, 0.0, loose).final_state()[0] - ref);
  IntegratorConfig tighter;
  tighter.rtol = 1e-8;
  tighter.atol = 1e-10;
  double e2 = std::abs(integrate(kRiccati, 2, s0, -5.0, 0.0, tighter).final_state()[0] - ref);
  CHECK(e2 * 10 <= e1 + 1e-15);
}

TEST_CASE("forward-backward time reversal returns to start") {
  const OdeField f = [](const double* s, double* ds) {
    ds[0] = s[1];
    ds[1] = -std::sin(s[0]);
  };
  double s0[2] = {0.4, -0.2};
  auto fwd = integrate(f, 2, s0, 0.0, 5.0);
  auto back = integrate(f, 2, fwd.final_state(), 5.0, 0.0);
  CHECK(std::abs(back.final_state()[0] - s0[0]) < 1e-6);
  CHECK(std::abs(back.final_state()[1] - s0[1]) < 1e-6);
  // Backward trajectory times are strictly decreasing.
  for (std::size_t i = 1; i < back.size(); ++i)
    CHECK(back.time(i) < back.time(i - 1));
}

TEST_CASE("event at x = 0.5 for unit drift") {
  const OdeField f = [](const double*, double* ds) { ds[0] = 1.0; };
  double s0 = 0.0;
  auto res = integrate_to_event(f, 1, {&s0, 1}, 0.0, 10.0,
                                [](const double* s) { return s[0] - 0.5; });
  REQUIRE(res.hit());
  CHECK(std::abs(*res.t_hit - 0.5) <= 1e-12);
  CHECK(res.trajectory.terminal_reason == TerminalReason::EventHit);

  // Idempotence: restarting on the section reports an immediate crossing.
  auto again = integrate_to_event(f, 1, res.state_hit, 0.0, 10.0,
                                  [](const double* s) { return s[0] - 0.5; });
  REQUIRE(again.hit());
  CHECK(std::abs(*again.t_hit) <= 1e-12);
}

TEST_CASE("monotone decay never reaches x = 2") {
  double s0 = 1.0;
  auto res = integrate_to_event(
      kDecay, 1, {&s0, 1}, 0.0, 50.0, [](const double* s) { return s[0] - 2.0; },
      EventDirection::Rising);
  CHECK(!res.hit());
  CHECK(res.trajectory.terminal_reason == TerminalReason::TimeEnd);
}

TEST_CASE("escape guard fires") {
  const OdeField f = [](const double* s, double* ds) { ds[0] = s[0] * s[0]; };
  double s0 = 1.0;
  auto traj = integrate(f, 1, {&s0, 1}, 0.0, 10.0);
  CHECK(traj.terminal_reason == TerminalReason::Escape);
  CHECK(std::abs(traj.final_state()[0]) > 1e3);
}

TEST_CASE("record=false keeps endpoints only") {
  IntegratorConfig cfg;
  cfg.record = false;
  double s0 = 1.0;
  auto traj = integrate(kDecay, 1, {&s0, 1}, 0.0, 1.0, cfg);
  CHECK(traj.size() == 2);
  CHECK(traj.state(0)[0] == 1.0);
  CHECK(std::abs(traj.final_state()[0] - std::exp(-1.0)) < 1e-8);
}
