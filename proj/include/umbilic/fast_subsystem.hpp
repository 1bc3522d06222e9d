#pragma once

#include <array>
#include <vector>

#include "umbilic/ode.hpp"

namespace umbilic {

// Parameters of the planar gradient family Z_{a,b,c}:
//   x' = x^2 + a y + b,   y' = y^2 + a x + c.
struct FastParams {
  double a = 0, b = 0, c = 0;
};

enum class EqKind { Sink, Source, Saddle, Degenerate };

struct EquilibriumInfo {
  double x, y;
  double det;    // 4xy - a^2
  double trace;  // 2(x + y)
  EqKind kind;
};

// Planar fast field at (x, y).
std::array<double, 2> fast_field(const FastParams& p, double x, double y);

// Real equilibria of Z_{a,b,c} (at most four), via the companion-matrix
// eigenvalues of the reduced quartic for |a| > tol and via the degenerate
// line pairs for |a| <= tol. Roots closer than 1e-9 are deduplicated; pairs
// that collide at a fold (|det| below the degeneracy threshold) are merged
// into a single Degenerate entry.
std::vector<EquilibriumInfo> fast_equilibria(const FastParams& p, double tol = 1e-9);

enum class FastConfig { A, B, C, D, Bifurcation };

const char* to_string(FastConfig c);
const char* to_string(EqKind k);

// Classifies the equilibrium configuration: (A) empty, (B) saddle + sink,
// (C) saddle + source, (D) two saddles + source + sink; any degenerate
// equilibrium reports Bifurcation. Throws InconsistentCount when the kind
// counts match none of these.
FastConfig classify_config(const FastParams& p);

struct JumpOutcome {
  enum class Type { Escape, ToEquilibrium, Undecided };
  Type type;
  std::array<double, 2> exit_state{};  // on {x + y = 2 nu} for Escape
  int equilibrium_index = -1;          // into fast_equilibria for ToEquilibrium
  double flight_time = 0;
};

// Forward fates of trajectories launched from small offsets around a
// degenerate (bifurcating) equilibrium: offsets of size delta along the
// Jacobian kernel direction and transversal perturbations of it. Each launch
// ends on the exit section {x + y = 2 nu} (Escape), in a small ball around
// another attracting equilibrium (ToEquilibrium), or Undecided once t_cap is
// exceeded. Probes that fall back onto the launch equilibrium are dropped:
// they probe its attracting sector, not an emanating candidate trajectory.
// The escape along the center direction is algebraic (time ~ 1/delta), hence
// the large default time budget. launch_index selects the degenerate
// equilibrium to launch from (-1: the most degenerate one). Requires
// parameters on the bifurcation set (a degenerate equilibrium exists).
std::vector<JumpOutcome> jump_outcomes(const FastParams& p, double delta = 1e-4,
                                       double nu = 2.0,
                                       const IntegratorConfig& cfg = {},
                                       int launch_index = -1, double t_cap = 1e5);

}  // namespace umbilic
