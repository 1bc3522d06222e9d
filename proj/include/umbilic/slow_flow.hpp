#pragma once

#include <array>
#include <complex>

#include "umbilic/ode.hpp"
#include "umbilic/system.hpp"

namespace umbilic {

struct SlowState {
  double x = 0, y = 0, a = 0;
};

// Slow functions restricted to the critical manifold:
// g~(x,y,a) = g(x, y, a, -x^2-a y, -y^2-a x, 0).
std::array<double, 3> restricted_slow_functions(const FastSlowSystem& sys,
                                                const SlowState& s);

// Desingularized slow flow Y = adj(d pi~) g~, in closed form. Time
// orientation must be reversed where 4xy - a^2 < 0 (see oriented_slow_flow).
std::array<double, 3> desing_slow_flow(const FastSlowSystem& sys,
                                       const SlowState& s);

struct OrientedVelocity {
  std::array<double, 3> v;
  bool on_cone;  // |4xy - a^2| < 1e-12: value returned unsigned
};

// Desingularized slow flow with the sign(4xy - a^2) orientation correction.
OrientedVelocity oriented_slow_flow(const FastSlowSystem& sys, const SlowState& s);

enum class OriginClass {
  StablePair,    // B0, C0 > 0: two 1-d stable manifolds + 1-d center
  UnstablePair,  // B0, C0 < 0: two 1-d unstable manifolds + 1-d center
  Rotational,    // B0 C0 < 0: imaginary pair around the 1-d center
};

struct OriginSpectrum {
  std::array<std::complex<double>, 3> eigenvalues;  // {0, -2 sqrt(B0C0), +2 sqrt(B0C0)}
  // Eigenvectors matching `eigenvalues`; for the Rotational class only the
  // center vector (index 0) is real and the pair is stored as real/imag parts.
  std::array<std::array<double, 3>, 3> eigenvectors;
  OriginClass cls;
};

// Linearization data of the desingularized slow flow at the origin.
// Throws Degenerate when B0 C0 = 0.
OriginSpectrum origin_spectrum(const FastSlowSystem& sys);

struct SigmaResult {
  Trajectory trajectory;  // from near the origin backward to {y = -nu}
  SlowState p;            // hit point on the entry section
};

// The unique slow-flow trajectory approaching the origin from inside the
// attracting region, traced backward from a seed at distance delta0 along the
// stable eigenvector until y = -nu. Requires B0, C0 > 0; throws
// LeftAttractingRegion if any sampled state leaves the attracting stratum,
// NoEvent if the section is never reached.
SigmaResult sigma_trajectory(const FastSlowSystem& sys, double nu = 0.25,
                             double delta0 = 1e-4,
                             const IntegratorConfig& cfg = {});

}  // namespace umbilic
