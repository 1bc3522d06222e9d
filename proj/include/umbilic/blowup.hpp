#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "umbilic/poly.hpp"
#include "umbilic/system.hpp"

namespace umbilic {

// The five directional charts of the weighted blow-up with weights
// (1,1,1,2,2,3) on (x,y,a,b,c,eps). Chart coordinate order (array slots):
//   MinusY: (x1, r1, a1, b1, c1, eps1)   x = r x1, y = -r
//   Eps:    (x2, y2, a2, b2, c2, r2)     eps = r^3
//   PlusA:  (x3, y3, r3, b3, c3, eps3)   a = r
//   MinusA: (x4, y4, r4, b4, c4, eps4)   a = -r
//   Exit:   (x5, r5, a5, b5, c5, eps5)   x = r(1+x5), y = r(1-x5)
enum class ChartId { MinusY, Eps, PlusA, MinusA, Exit };

const char* to_string(ChartId c);
const std::array<const char*, 6>& chart_coord_names(ChartId c);
int chart_radial_slot(ChartId c);

struct ChartPoint {
  ChartId chart;
  std::array<double, 6> coords;
  double radial() const { return coords[chart_radial_slot(chart)]; }
};

// The blow-up map of the chart, applied literally.
StateZ blow_up(const ChartPoint& p);

// Inverse of blow_up on the chart's domain (y<0 / eps>0 / a>0 / a<0 /
// x+y>0). Throws WrongSign outside.
ChartPoint chart_lift(ChartId chart, const StateZ& s);

// Transition between charts through the weighted-scaling structure; exact on
// the blow-up sphere (r = 0) as well. Throws NotInOverlap when the target
// gauge quantity is not positive.
ChartPoint coordinate_change(ChartId from, ChartId to, const ChartPoint& p);

// Blow-up map components as polynomials in the chart coordinates.
std::array<PolyExpr, 6> chart_map_polys(ChartId c);

// Desingularized chart vector fields of the full fast-slow field, produced by
// the generic symbolic pullback (DPhi)^{-1} X(Phi(.)) / r with the common r
// factor cancelled exactly. Construction happens once per system; evaluation
// is immutable and thread-safe.
class BlowupAtlas {
public:
  explicit BlowupAtlas(const FastSlowSystem& sys);

  const std::array<PolyExpr, 6>& field_polys(ChartId c) const;
  std::array<double, 6> field(const ChartPoint& p) const;
  std::array<std::array<double, 6>, 6> jacobian(const ChartPoint& p) const;

private:
  std::array<std::array<PolyExpr, 6>, 5> fields_;
  std::array<std::array<std::array<PolyExpr, 6>, 6>, 5> jacobians_;
};

// Blow-up of the desingularized slow flow Y (weights (1,1,1) on (x,y,a)).
// The slow charts reuse the ChartId labels; coordinates are
//   MinusY: (x1, r1, a1), PlusA: (x3, y3, r3), MinusA: (x4, y4, r4),
//   Exit: (x5, r5, a5).
// No extra r is divided out: the blown-up slow flow is already nontrivial on
// the sphere.
class SlowBlowupAtlas {
public:
  explicit SlowBlowupAtlas(const FastSlowSystem& sys);

  const std::array<PolyExpr, 3>& field_polys(ChartId c) const;
  std::array<double, 3> field(ChartId c, const std::array<double, 3>& u) const;
  std::array<std::array<double, 3>, 3> jacobian(ChartId c,
                                                const std::array<double, 3>& u) const;

private:
  int index(ChartId c) const;
  std::array<std::array<PolyExpr, 3>, 4> fields_;
  std::array<std::array<std::array<PolyExpr, 3>, 3>, 4> jacobians_;
};

struct BlownSlowVelocity {
  std::array<double, 3> v;
  bool reversed_region;  // 4 x1 + a1^2 > 0: time orientation must be reversed
};

// The blown-up slow flow in the entry chart at (x1, r1, a1).
BlownSlowVelocity blown_slow_flow_y1(const SlowBlowupAtlas& atlas, double x1,
                                     double r1, double a1);

// Closed form of the x5-component of the exit transition for rho = r_k/nu in
// (0, 1]; odd in x_k. Equals the time-log(1/rho) flow of
// x' = x(1-x^2)/(1+x^2).
double exit_transition_x5(double x_k, double rho);

enum class FoldedType { FoldedSaddle, FoldedCenter };

struct FoldedFlowInfo {
  std::array<double, 2> velocity;     // at the queried point
  std::array<double, 2> singularity;  // folded singularity position
  FoldedType type;                    // saddle iff B0 C0 > 0
  std::array<std::complex<double>, 2> eigenvalues;  // +-2 sqrt(B0 C0)
  std::array<double, 2> invariant_slopes;  // +-sqrt(B0/C0) (saddle case)
  std::string zeta_name;                   // "zeta1" or "zeta6"
};

// The folded (desingularized) slow flows on the critical manifolds of the
// +-a chart sphere systems: linear fields with a single folded singularity.
// chart must be PlusA or MinusA; throws Degenerate when B0 C0 = 0.
FoldedFlowInfo folded_flows(const FastSlowSystem& sys, ChartId chart, double u,
                            double v);

enum class EquilibriumFieldKind { FastChart, SlowFlow, FoldedFlow };

struct NamedEquilibrium {
  std::string name;
  ChartId chart;
  std::array<double, 6> coords;  // chart coordinates; slow entries in slots 0..2
  EquilibriumFieldKind kind;
  std::vector<std::complex<double>> eigenvalues;
};

// The named equilibria of the blow-up analysis: q1, q2 (entry chart), q4, q5,
// q6 (exit chart) of the fast chart fields; zeta1..zeta3 of the blown-up slow
// flow in the entry chart; zeta6 of the folded flow; zeta5 (and zeta4 when
// B0 < C0, otherwise it lies outside the atlas) of the blown-up slow flow in
// the exit chart, located by Newton refinement from their closed-form seeds.
// Throws Degenerate when B0 C0 = 0; the zeta2..zeta5 family requires
// B0 C0 > 0.
std::vector<NamedEquilibrium> named_equilibria(const FastSlowSystem& sys);

}  // namespace umbilic
