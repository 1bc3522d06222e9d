#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "umbilic/config.hpp"
#include "umbilic/ode.hpp"
#include "umbilic/slow_flow.hpp"
#include "umbilic/system.hpp"

namespace umbilic {

struct SeedSpec {
  int count = 64;
  double w_x = 0.05;    // half-width of the entry rectangle along x
  double k_a = 0.1;     // a-half-width = k_a * eps^(1/3)
  double delta0 = 1e-4; // sigma seeding distance
};

struct RunConfig {
  FastSlowSystem sys;
  double eps = 1e-3;
  double nu = 0.25;
  double tau = 0.05;  // fan-class margin on x5
  SeedSpec seeds;
  IntegratorConfig integrator;
  int jobs = 0;  // 0: hardware concurrency

  static RunConfig from_config(const ConfigData& cfg);
};

enum class FanClass { Lx, R, Ly };
const char* to_string(FanClass f);

struct ExitRecord {
  int seed_id = -1;
  StateZ exit_state;      // on {x + y = 2 nu}
  double x5;              // (x - y)/(x + y)
  FanClass fan_class;     // Ly below -1+tau, Lx above 1-tau, R between
  double flight_time;     // in slow-time units (eps * fast time)
};

struct EntrySeeds {
  SlowState p;  // sigma crossing of the entry section
  std::vector<StateZ> seeds;
  std::vector<std::array<double, 2>> offsets;  // (dx, da) per seed
};

// Seeds on the critical manifold inside {y = -nu}: a rectangle of offsets
// around the sigma crossing p, with a-half-width k_a * eps^(1/3). All seeds
// must classify as regular attracting.
EntrySeeds entry_seeds(const RunConfig& cfg);

// Integrates the fast-time field from the seed until the exit section
// x + y = 2 nu; throws NoEvent (reporting the last state) when the seed
// escapes elsewhere.
ExitRecord transition_map(const RunConfig& cfg, const StateZ& seed,
                          int seed_id = -1, Trajectory* trajectory = nullptr);

struct FanoutResult {
  EntrySeeds entry;
  std::vector<ExitRecord> records;
  int count_lx = 0, count_r = 0, count_ly = 0;
  std::optional<ExitRecord> aimed;  // fan-center exit found by bisection
  int bisection_steps = 0;          // steps until the first |x5| <= 0.5 hit
  bool aimed_converged = false;     // |x5| <= 0.5 within 60 steps
  // Representatives of the lateral transition bands x5 ~ +-0.95, located by
  // the same bisection between the fan center and the lateral endpoints.
  std::optional<ExitRecord> band_x, band_y;
};

// Runs the seed ensemble, classifies the exits and aims for an interior exit
// by bisecting a seed segment whose endpoints straddle the fan. Throws
// NoStraddle when no endpoint pair lands in Lx and Ly.
FanoutResult fanout_experiment(const RunConfig& cfg);

struct ScalingComponent {
  double exponent = 0, intercept = 0, max_residual = 0;
  bool degenerate = false;  // some exit magnitude below 1e-14: not fitted
  std::vector<double> magnitudes;
};

struct ScalingFit {
  std::vector<double> eps_grid;
  ScalingComponent a, b, c;
  std::vector<double> flight_times;  // slow-time units, per eps
};

// Least-squares slopes of log|a|, log|b|, log|c| at exit against log eps.
// Seeds sit at the sigma crossing of the entry section, offset in a by
// scale * eps^(1/3): the b, c exponents are measured on the centered seed,
// the a exponent on the seed at the a-edge of the entry domain (offset
// aligned with the drift sign). Passing a finite seed_a_scale uses that
// offset for both families instead.
ScalingFit scaling_sweep(const FastSlowSystem& sys,
                         const std::vector<double>& eps_grid,
                         const RunConfig& cfg,
                         double seed_a_scale = std::nan(""));

struct AltUnfoldingExit {
  int seed_id;
  bool reached_circle;
  double angle;  // atan2(y, x) at the radius-nu circle
  std::array<double, 2> exit_xy;
};

struct AltUnfoldingResult {
  std::vector<AltUnfoldingExit> exits;
  int distinct_directions = 0;  // angle clusters separated by > 0.15 rad
  bool fan_out = false;         // >= 3 distinct exit directions
};

// Gradient system of the rotated unfolding V~ = y^3/3 + y x^2 + a(y^2 - x^2)
// + b x + c y with slow drift g = (-1, 1, 2): ten seeds near
// (-1.5, -2, 1, -1, -2), tracked through a radius-nu circle around the
// origin of the fast plane. The base parameters lie on the drift ray through
// the umbilic; the seeds spread in b across the fan. eps = 0 freezes the
// slow variables (no exits).
AltUnfoldingResult alt_unfolding_experiment(const RunConfig& cfg,
                                            double eps_override = -1.0);

// Deterministic static-scheduled parallel loop used by the ensembles.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

}  // namespace umbilic
