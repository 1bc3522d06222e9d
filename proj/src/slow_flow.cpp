#include "umbilic/slow_flow.hpp"

#include <cmath>

#include "umbilic/errors.hpp"
#include "umbilic/geometry.hpp"

namespace umbilic {

std::array<double, 3> restricted_slow_functions(const FastSlowSystem& sys,
                                                const SlowState& s) {
  std::array<double, kPolyVars> v = {s.x,
                                     s.y,
                                     s.a,
                                     -s.x * s.x - s.a * s.y,
                                     -s.y * s.y - s.a * s.x,
                                     0.0};
  return {sys.g_a().eval(v), sys.g_b().eval(v), sys.g_c().eval(v)};
}

std::array<double, 3> desing_slow_flow(const FastSlowSystem& sys,
                                       const SlowState& s) {
  auto [ga, gb, gc] = restricted_slow_functions(sys, s);
  const double x = s.x, y = s.y, a = s.a;
  return {
      a * gc - 2 * y * gb + (x * a - 2 * y * y) * ga,
      a * gb - 2 * x * gc + (y * a - 2 * x * x) * ga,
      (4 * x * y - a * a) * ga,
  };
}

OrientedVelocity oriented_slow_flow(const FastSlowSystem& sys, const SlowState& s) {
  OrientedVelocity out;
  out.v = desing_slow_flow(sys, s);
  const double det = 4 * s.x * s.y - s.a * s.a;
  out.on_cone = std::abs(det) < 1e-12;
  if (!out.on_cone && det < 0)
    for (double& vi : out.v) vi = -vi;
  return out;
}

OriginSpectrum origin_spectrum(const FastSlowSystem& sys) {
  const double B0 = sys.B0(), C0 = sys.C0();
  if (B0 * C0 == 0.0)
    throw DegenerateError("origin spectrum degenerate: B0*C0 = 0");

  OriginSpectrum out;
  out.eigenvectors[0] = {B0 / (2 * C0), C0 / (2 * B0), 1.0};
  if (B0 * C0 > 0) {
    const double lam = 2 * std::sqrt(B0 * C0);
    const double rho = std::sqrt(B0 / C0);
    out.eigenvalues = {0.0, -lam, lam};
    if (B0 > 0) {
      out.cls = OriginClass::StablePair;
      out.eigenvectors[1] = {rho, 1.0, 0.0};
      out.eigenvectors[2] = {-rho, 1.0, 0.0};
    } else {
      // For B0, C0 < 0 the eigenvectors of the nonzero pair swap.
      out.cls = OriginClass::UnstablePair;
      out.eigenvectors[1] = {-rho, 1.0, 0.0};
      out.eigenvectors[2] = {rho, 1.0, 0.0};
    }
  } else {
    const double om = 2 * std::sqrt(-B0 * C0);
    out.cls = OriginClass::Rotational;
    out.eigenvalues = {0.0, {0.0, -om}, {0.0, om}};
    // Eigenvector of +i om is (0,1,0) + i (-om/(2 C0), 0, 0); slots 1 and 2
    // hold its real and imaginary parts.
    out.eigenvectors[1] = {0.0, 1.0, 0.0};
    out.eigenvectors[2] = {-om / (2 * C0), 0.0, 0.0};
  }
  return out;
}

SigmaResult sigma_trajectory(const FastSlowSystem& sys, double nu, double delta0,
                             const IntegratorConfig& cfg) {
  const double B0 = sys.B0(), C0 = sys.C0();
  if (!(B0 > 0) || !(C0 > 0))
    throw DegenerateError("sigma requires B0, C0 > 0");

  // Stable eigenvector (sqrt(B0/C0), 1, 0), scaled into {x < 0, y < 0}.
  std::array<double, 3> v = {std::sqrt(B0 / C0), 1.0, 0.0};
  const double n = std::hypot(v[0], v[1]);
  std::array<double, 3> s0 = {-delta0 * v[0] / n, -delta0 * v[1] / n, 0.0};

  // Inside the attracting region det > 0, so the unreversed field applies.
  const OdeField field = [&sys](const double* s, double* ds) {
    auto w = desing_slow_flow(sys, {s[0], s[1], s[2]});
    ds[0] = w[0];
    ds[1] = w[1];
    ds[2] = w[2];
  };

  const double t_max = -200.0 / std::sqrt(B0 * C0);
  auto res = integrate_to_event(
      field, 3, s0, 0.0, t_max,
      [nu](const double* s) { return s[1] + nu; }, EventDirection::Any, cfg);
  if (!res.hit())
    throw NoEventError("sigma never reached the section y = -nu");

  const auto& traj = res.trajectory;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    auto st = traj.state(i);
    auto label = stratify(st[0], st[1], st[2]);
    if (label != StratumLabel::RegularAttracting)
      throw LeftAttractingRegionError(
          "sigma left the attracting stratum at t = " + std::to_string(traj.time(i)));
  }
  SigmaResult out;
  out.trajectory = std::move(res.trajectory);
  out.p = {res.state_hit[0], res.state_hit[1], res.state_hit[2]};
  return out;
}

}  // namespace umbilic
