#pragma once

#include <limits>

namespace umbilic {

// One solution of the Riccati equation x' = x^2 + B0 t (unit drift b = B0 t),
// parametrized by d in (-inf, +inf]: the Airy quotient
//   x(t) = B^(1/3) (d Ai' + Bi')(-B^(1/3) t) / (d Ai + Bi)(-B^(1/3) t),
// with d = +inf the dividing solution Ai'/Ai. Throws AtAsymptote when the
// denominator is below 1e-13.
double dividing_solution(double B0, double t,
                         double d = std::numeric_limits<double>::infinity());

// Largest t below which the dividing solution with drift B0 exists:
// M = -z0 / B0^(1/3).
double dividing_blowup_time(double B0);

struct GammaState {
  double x2, y2, a2, b2, c2;
  double s, t;
};

// Member of the one-parameter solution family on the rescaling-chart sphere:
// gamma_s(t) = (gx(t), gy(t+s), a2 = 0, B0 t, C0 (t+s)) built from the two
// dividing solutions. Requires B0, C0 > 0 and t < min(M, N - s); throws
// BeyondBlowupTime otherwise.
GammaState gamma_family(double B0, double C0, double s, double t);

enum class GammaClass { Q4, Q5, Q6 };

const char* to_string(GammaClass g);

// Family-parameter threshold s0 = (B0^(-1/3) - C0^(-1/3)) z0 separating the
// forward asymptotics.
double s_critical(double B0, double C0);

// Forward limit of gamma_s: q4 for s > s0, q5 at s0 (within 1e-12), q6 below;
// decided by comparing the two blow-up times M and N - s.
GammaClass classify_gamma(double B0, double C0, double s);

}  // namespace umbilic
