#pragma once

namespace umbilic {

// Airy function values and first derivatives at a real argument.
struct AiryEval {
  double Ai, Aip, Bi, Bip;
  double wronskian() const { return Ai * Bip - Aip * Bi; }  // identically 1/pi
};

// Evaluates Ai, Ai', Bi, Bi'. Accurate range z in [-50, 30] (throws
// OutOfRange beyond): Maclaurin series for |z| <= 8, asymptotic expansions
// outside (oscillatory form for z < -8, exponential form for z > 8).
AiryEval airy(double z);

// Exponentially scaled values on the positive axis, usable for arbitrarily
// large z >= 0 without overflow or underflow:
//   ai = e^{zeta} Ai, aip = e^{zeta} Ai', bi = e^{-zeta} Bi,
//   bip = e^{-zeta} Bi', with zeta = (2/3) z^{3/2}.
struct ScaledAiry {
  double ai, aip, bi, bip;
  double zeta;
};
ScaledAiry airy_scaled_positive(double z);

// First (largest) zero of Ai, located by bracketed bisection on [-3, -2].
double airy_first_zero();

}  // namespace umbilic
