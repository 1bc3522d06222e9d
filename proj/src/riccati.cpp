#include "umbilic/riccati.hpp"

#include <cmath>

#include "umbilic/airy.hpp"
#include "umbilic/errors.hpp"

namespace umbilic {

double dividing_solution(double B0, double t, double d) {
  if (!(B0 > 0)) throw Error("invalid-argument", "dividing_solution needs B0 > 0");
  const double Bc = std::cbrt(B0);
  const double z = -Bc * t;
  double num, den;
  if (z >= 8.0) {
    // Far on the positive axis the quotient is evaluated from exponentially
    // scaled values; Ai has no zeros there, so only the d Ai + Bi combination
    // can still vanish (via enormous negative d).
    auto s = airy_scaled_positive(z);
    if (std::isinf(d)) {
      num = s.aip;
      den = s.ai;
    } else {
      double w = d * std::exp(-2.0 * s.zeta);
      num = w * s.aip + s.bip;
      den = w * s.ai + s.bi;
    }
  } else {
    const auto e = airy(z);
    if (std::isinf(d)) {
      num = e.Aip;
      den = e.Ai;
    } else {
      num = d * e.Aip + e.Bip;
      den = d * e.Ai + e.Bi;
    }
  }
  if (std::abs(den) < 1e-13)
    throw AtAsymptoteError("riccati solution at an asymptote");
  return Bc * num / den;
}

double dividing_blowup_time(double B0) {
  static const double z0 = airy_first_zero();
  return -z0 / std::cbrt(B0);
}

const char* to_string(GammaClass g) {
  switch (g) {
    case GammaClass::Q4: return "q4";
    case GammaClass::Q5: return "q5";
    case GammaClass::Q6: return "q6";
  }
  return "?";
}

GammaState gamma_family(double B0, double C0, double s, double t) {
  if (!(B0 > 0) || !(C0 > 0))
    throw Error("invalid-argument", "gamma family needs B0, C0 > 0");
  const double M = dividing_blowup_time(B0);
  const double Ns = dividing_blowup_time(C0) - s;
  if (!(t < std::min(M, Ns)))
    throw BeyondBlowupTimeError("t beyond the family blow-up time");
  GammaState g;
  g.x2 = dividing_solution(B0, t);
  g.y2 = dividing_solution(C0, t + s);
  g.a2 = 0.0;
  g.b2 = B0 * t;
  g.c2 = C0 * (t + s);
  g.s = s;
  g.t = t;
  return g;
}

double s_critical(double B0, double C0) {
  static const double z0 = airy_first_zero();
  return (std::pow(B0, -1.0 / 3.0) - std::pow(C0, -1.0 / 3.0)) * z0;
}

GammaClass classify_gamma(double B0, double C0, double s) {
  if (!(B0 > 0) || !(C0 > 0))
    throw Error("invalid-argument", "classify_gamma needs B0, C0 > 0");
  const double M = dividing_blowup_time(B0);
  const double Ns = dividing_blowup_time(C0) - s;
  if (std::abs(Ns - M) <= 1e-12) return GammaClass::Q5;
  // x2 blows up first when M < Ns (escape along the x-axis, q6); otherwise
  // y2 blows up first (q4).
  return M < Ns ? GammaClass::Q6 : GammaClass::Q4;
}

}  // namespace umbilic
