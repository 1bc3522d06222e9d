#pragma once

// Test-only oracles, independent of the library implementation paths they
// check.

#include <array>
#include <cmath>

#include "umbilic/slow_flow.hpp"
#include "umbilic/system.hpp"

namespace oracles {

// Maclaurin-series Airy evaluation in long double, accurate for |z| <= 4.
// Independent of the library's double-double implementation.
inline long double ai_series(long double z) {
  const long double c1 = 0.35502805388781723926006318600418317640L;
  const long double c2 = 0.25881940379280679840518356018896812919L;
  long double a[3] = {c1, -c2, 0.0L};
  long double sum = 0.0L, zp = 1.0L;
  for (int n = 0; n < 120; ++n) {
    int lane = n % 3;
    sum += a[lane] * zp;
    a[lane] /= static_cast<long double>(n + 2) * static_cast<long double>(n + 3);
    zp *= z;
  }
  return sum;
}

// First zero of Ai by bisection on the series oracle.
inline double airy_first_zero() {
  long double lo = -3.0L, hi = -2.0L;
  long double flo = ai_series(lo);
  for (int i = 0; i < 120 && hi - lo > 1e-16L; ++i) {
    long double mid = (lo + hi) / 2;
    long double fm = ai_series(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return static_cast<double>((lo + hi) / 2);
}

// Desingularized slow flow via the adjugate of the catastrophe-map Jacobian,
// assembled numerically (the library uses the expanded closed form).
inline std::array<double, 3> adjugate_slow_flow(const umbilic::FastSlowSystem& sys,
                                                const umbilic::SlowState& s) {
  const double x = s.x, y = s.y, a = s.a;
  double J[3][3] = {{0, 0, 1}, {-2 * x, -a, -y}, {-a, -2 * y, -x}};
  double adj[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      adj[j][i] = J[r0][c0] * J[r1][c1] - J[r0][c1] * J[r1][c0];
    }
  auto g = umbilic::restricted_slow_functions(sys, s);
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i)
    out[i] = adj[i][0] * g[0] + adj[i][1] * g[1] + adj[i][2] * g[2];
  return out;
}

}  // namespace oracles
