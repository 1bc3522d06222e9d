#include <doctest.h>

#include <cmath>
#include <cstring>

#include "umbilic/errors.hpp"
#include "umbilic/experiments.hpp"
#include "umbilic/geometry.hpp"

using namespace umbilic;

namespace {

RunConfig fig1_config() {
  RunConfig cfg{FastSlowSystem::constant_drift(-1, 2, 1, "fig1")};
  cfg.eps = 1e-3;
  return cfg;
}

}  // namespace

TEST_CASE("entry seeds lie on the attracting manifold section") {
  auto cfg = fig1_config();
  auto es = entry_seeds(cfg);
  CHECK(es.seeds.size() == 64);
  CHECK(es.p.y == doctest::Approx(-0.25));
  for (const auto& s : es.seeds) {
    CHECK(s.y == -cfg.nu);
    CHECK(stratify(s.x, s.y, s.a) == StratumLabel::RegularAttracting);
    // on the critical manifold exactly
    auto g = potential_grad_hess(s).grad;
    CHECK(g[0] == 0.0);
    CHECK(g[1] == 0.0);
  }
  // a-spread halves when eps is divided by 8 (eps^(1/3) width).
  auto cfg8 = cfg;
  cfg8.eps = cfg.eps / 8;
  auto es8 = entry_seeds(cfg8);
  double span = 0, span8 = 0;
  for (std::size_t i = 0; i < es.offsets.size(); ++i) {
    span = std::max(span, std::abs(es.offsets[i][1]));
    span8 = std::max(span8, std::abs(es8.offsets[i][1]));
  }
  CHECK(span8 == doctest::Approx(span / 2).epsilon(1e-12));
}

TEST_CASE("single seed is the sigma crossing itself") {
  auto cfg = fig1_config();
  cfg.seeds.count = 1;
  auto es = entry_seeds(cfg);
  REQUIRE(es.seeds.size() == 1);
  CHECK(es.offsets[0][0] == 0.0);
  CHECK(es.offsets[0][1] == 0.0);
  StateZ want = psi(es.p.x, -cfg.nu, es.p.a);
  CHECK(es.seeds[0].x == want.x);
  CHECK(es.seeds[0].a == want.a);
}

TEST_CASE("no straddle without lateral seeds") {
  auto cfg = fig1_config();
  cfg.seeds.count = 4;
  cfg.seeds.w_x = 1e-4;
  cfg.seeds.k_a = 1e-4;
  CHECK_THROWS_AS(fanout_experiment(cfg), NoStraddleError);
}

TEST_CASE("transition map produces an exit record") {
  auto cfg = fig1_config();
  auto es = entry_seeds(cfg);
  StateZ center = psi(es.p.x, -cfg.nu, es.p.a);
  center.eps = cfg.eps;
  auto rec = transition_map(cfg, center, 0);
  CHECK(std::abs(rec.exit_state.x + rec.exit_state.y - 2 * cfg.nu) < 1e-10);
  CHECK(std::abs(rec.exit_state.a) < 0.2);
  CHECK(rec.flight_time > 0);

  // A seed far outside the entry domain exits hugging an axis.
  StateZ far = psi(es.p.x, -cfg.nu, -0.5);
  far.eps = cfg.eps;
  auto frec = transition_map(cfg, far, 1);
  CHECK(std::abs(frec.x5) > 0.9);

  // eps -> eps/8 shrinks |a_exit| by roughly 2 (the eps^(1/3) scaling), with
  // the seed at the a-edge of the entry domain.
  auto edge_run = [&](double eps) {
    RunConfig c = cfg;
    c.eps = eps;
    StateZ s = psi(es.p.x, -cfg.nu, es.p.a - std::cbrt(eps));
    s.eps = eps;
    return transition_map(c, s, 2);
  };
  double a1 = std::abs(edge_run(1e-4).exit_state.a);
  double a2 = std::abs(edge_run(1e-4 / 8).exit_state.a);
  CHECK(a1 / a2 == doctest::Approx(2.0).epsilon(0.35));
}

TEST_CASE("fanout experiment populates all classes and aims inside") {
  auto cfg = fig1_config();
  auto fo = fanout_experiment(cfg);
  CHECK(fo.count_lx > 0);
  CHECK(fo.count_ly > 0);
  CHECK(fo.count_lx + fo.count_r + fo.count_ly ==
        static_cast<int>(fo.records.size()));
  REQUIRE(fo.aimed.has_value());
  CHECK(fo.aimed_converged);
  CHECK(std::abs(fo.aimed->x5) <= 0.5);
  CHECK(fo.bisection_steps <= 60);

  // Lateral bands are populated (records or the band aimer).
  bool near_x = false, near_y = false;
  for (const auto& r : fo.records) {
    near_x = near_x || (r.x5 >= 0.9 && r.x5 <= 1.0);
    near_y = near_y || (r.x5 >= -1.0 && r.x5 <= -0.9);
  }
  REQUIRE(fo.band_x.has_value());
  REQUIRE(fo.band_y.has_value());
  near_x = near_x || (fo.band_x->x5 >= 0.9 && fo.band_x->x5 <= 1.0);
  near_y = near_y || (fo.band_y->x5 >= -1.0 && fo.band_y->x5 <= -0.9);
  CHECK(near_x);
  CHECK(near_y);
}

TEST_CASE("symmetric drift aims the interior exit at the diagonal") {
  RunConfig cfg{FastSlowSystem::constant_drift(-1, 1, 1, "sym")};
  cfg.eps = 1e-3;
  auto fo = fanout_experiment(cfg);
  REQUIRE(fo.aimed.has_value());
  CHECK(std::abs(fo.aimed->x5) < 0.2);
}

TEST_CASE("class counts nest monotonically in tau") {
  // Larger tau widens the lateral bands (Lx above 1 - tau, Ly below
  // -1 + tau), so the interior class can only shrink.
  auto cfg = fig1_config();
  auto lo = fanout_experiment(cfg);
  auto cfg2 = cfg;
  cfg2.tau = 0.1;
  auto hi = fanout_experiment(cfg2);
  CHECK(hi.count_r <= lo.count_r);
  CHECK(hi.count_lx >= lo.count_lx);
  CHECK(hi.count_ly >= lo.count_ly);
}

TEST_CASE("determinism across worker counts") {
  auto cfg = fig1_config();
  cfg.seeds.count = 16;
  cfg.jobs = 1;
  auto one = fanout_experiment(cfg);
  cfg.jobs = 4;
  auto four = fanout_experiment(cfg);
  REQUIRE(one.records.size() == four.records.size());
  for (std::size_t i = 0; i < one.records.size(); ++i) {
    CHECK(std::memcmp(&one.records[i].exit_state, &four.records[i].exit_state,
                      sizeof(StateZ)) == 0);
    CHECK(one.records[i].x5 == four.records[i].x5);
    CHECK(one.records[i].flight_time == four.records[i].flight_time);
  }
}

TEST_CASE("fan monotonicity along the straddling segment") {
  auto cfg = fig1_config();
  cfg.seeds.count = 16;
  auto fo = fanout_experiment(cfg);
  // Sample the segment between the straddling pair at bisection-grid
  // resolution and count sign changes of x5.
  int i_lx = -1, i_ly = -1;
  for (std::size_t i = 0; i < fo.records.size(); ++i) {
    if (fo.records[i].fan_class == FanClass::Lx && i_lx < 0) i_lx = static_cast<int>(i);
    if (fo.records[i].fan_class == FanClass::Ly && i_ly < 0) i_ly = static_cast<int>(i);
  }
  REQUIRE(i_lx >= 0);
  REQUIRE(i_ly >= 0);
  int changes = 0;
  double prev = 0;
  for (int k = 0; k <= 32; ++k) {
    double lam = k / 32.0;
    double dx = (1 - lam) * fo.entry.offsets[i_lx][0] + lam * fo.entry.offsets[i_ly][0];
    double da = (1 - lam) * fo.entry.offsets[i_lx][1] + lam * fo.entry.offsets[i_ly][1];
    StateZ s = psi(fo.entry.p.x + dx, -cfg.nu, fo.entry.p.a + da);
    s.eps = cfg.eps;
    double x5 = transition_map(cfg, s, -3).x5;
    if (k > 0 && (x5 < 0) != (prev < 0)) ++changes;
    prev = x5;
  }
  CHECK(changes == 1);
}

TEST_CASE("flight-time ratio per eps decade stays in the passage band") {
  auto cfg = fig1_config();
  std::vector<double> grid = {1e-5, 1e-4, 1e-3};
  auto fit = scaling_sweep(cfg.sys, grid, cfg);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double ratio = fit.flight_times[i] / fit.flight_times[i - 1];
    CHECK(ratio >= 1.0);
    CHECK(ratio <= 3.5);
  }
}

TEST_CASE("scaling sweep exponents") {
  auto cfg = fig1_config();
  std::vector<double> grid;
  for (int k = 0; k < 7; ++k) grid.push_back(1e-6 * std::pow(10.0, 0.5 * k));
  auto fit = scaling_sweep(cfg.sys, grid, cfg);
  CHECK(!fit.a.degenerate);
  CHECK(!fit.b.degenerate);
  CHECK(!fit.c.degenerate);
  CHECK(std::abs(fit.a.exponent - 1.0 / 3.0) <= 0.05);
  CHECK(std::abs(fit.b.exponent - 2.0 / 3.0) <= 0.05);
  CHECK(std::abs(fit.c.exponent - 2.0 / 3.0) <= 0.05);
}

TEST_CASE("factored g_a sweep and the degenerate fit") {
  auto cfg = fig1_config();
  FastSlowSystem fact(PolyExpr::parse("-a"), PolyExpr::parse("2"),
                      PolyExpr::parse("1"), PolyExpr(), PolyExpr(), "factored");
  std::vector<double> grid;
  for (int k = 0; k < 7; ++k) grid.push_back(1e-6 * std::pow(10.0, 0.5 * k));
  auto fit = scaling_sweep(fact, grid, cfg, 0.1);
  CHECK(!fit.a.degenerate);
  CHECK(std::abs(fit.a.exponent - 1.0 / 3.0) <= 0.05);

  // {a = 0} is invariant: with zero offset the exit a vanishes identically.
  auto fit0 = scaling_sweep(fact, grid, cfg, 0.0);
  CHECK(fit0.a.degenerate);
}

TEST_CASE("alternative unfolding fans out") {
  auto cfg = fig1_config();
  auto res = alt_unfolding_experiment(cfg);
  int reached = 0;
  for (const auto& e : res.exits) reached += e.reached_circle;
  CHECK(reached == 10);
  CHECK(res.distinct_directions >= 3);
  CHECK(res.fan_out);

  // The extreme seeds escape along the two dominant lateral routes.
  const auto& first = res.exits.front();
  const auto& last = res.exits.back();
  REQUIRE(first.reached_circle);
  REQUIRE(last.reached_circle);
  CHECK(std::abs(first.angle - last.angle) > 1.0);

  // Frozen slow variables: trajectories settle at fast equilibria, no fan.
  auto frozen = alt_unfolding_experiment(cfg, 0.0);
  CHECK(!frozen.fan_out);
  int reached0 = 0;
  for (const auto& e : frozen.exits) reached0 += e.reached_circle;
  CHECK(reached0 == 0);
}
