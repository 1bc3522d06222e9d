#include "umbilic/airy.hpp"

#include <cmath>

#include "detail/dd.hpp"
#include "umbilic/errors.hpp"

namespace umbilic {

namespace {

using detail::DD;

// Ai(0), Ai'(0), Bi(0), Bi'(0) split into double-double parts.
constexpr DD kAi0{0.3550280538878172, 2.05233632436212e-17};
constexpr DD kAip0{-0.2588194037928068, 2.522243111610832e-17};
constexpr DD kBi0{0.6149266274460007, 5.0899207794891416e-17};
constexpr DD kBip0{0.4482883573538264, -2.5363237774417305e-17};

constexpr double kSeriesRadius = 8.0;
constexpr int kAsymptoticTerms = 12;
constexpr double kSqrtPi = 1.7724538509055160273;

// Power-series solution of u'' = z u: coefficients obey
// a_{n+3} = a_n / ((n+2)(n+3)). Sums value and derivative for both
// fundamental pairs in double-double arithmetic.
AiryEval airy_series(double z) {
  DD za(z, 0.0);
  // Coefficients for the three lanes n mod 3; lane n=2 is identically zero.
  DD a_ai[3] = {kAi0, kAip0, DD(0.0)};
  DD a_bi[3] = {kBi0, kBip0, DD(0.0)};
  DD ai = DD(0.0), aip = DD(0.0), bi = DD(0.0), bip = DD(0.0);
  DD zpow(1.0);       // z^n
  DD zpow_prev(0.0);  // z^(n-1)

  for (int n = 0; n < 402; ++n) {
    int lane = n % 3;
    DD ca = a_ai[lane], cb = a_bi[lane];
    ai = add(ai, mul(ca, zpow));
    bi = add(bi, mul(cb, zpow));
    if (n >= 1) {
      aip = add(aip, mul(mul(ca, static_cast<double>(n)), zpow_prev));
      bip = add(bip, mul(mul(cb, static_cast<double>(n)), zpow_prev));
    }
    // Convergence: bound the remaining terms by the largest pending
    // coefficient over all three lanes (lane n=2 is identically zero).
    double cmax = 0.0;
    for (int l = 0; l < 3; ++l)
      cmax = std::max({cmax, std::abs(a_ai[l].hi), std::abs(a_bi[l].hi)});
    double tail = cmax * std::abs(zpow.hi);
    if (n > 8 && tail < 1e-40 * (std::abs(ai.hi) + std::abs(bi.hi) + 1e-300)) break;

    double denom = static_cast<double>(n + 2) * static_cast<double>(n + 3);
    a_ai[lane] = detail::div(ca, denom);
    a_bi[lane] = detail::div(cb, denom);
    zpow_prev = zpow;
    zpow = mul(zpow, za);
  }
  return {ai.value(), aip.value(), bi.value(), bip.value()};
}

// u_k, v_k coefficients of the large-|z| expansions.
void asymptotic_coeffs(double u[], double v[], int n) {
  u[0] = 1.0;
  v[0] = 1.0;
  for (int k = 1; k < n; ++k) {
    double kk = static_cast<double>(k);
    u[k] = u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) /
           (216.0 * kk * (2 * kk - 1));
    v[k] = u[k] * (6 * kk + 1) / (1 - 6 * kk);
  }
}

// Scaled asymptotic evaluation on the positive axis. `terms` <= 0 selects
// adaptive truncation at the smallest term.
ScaledAiry airy_scaled_asymptotic(double z, int terms) {
  constexpr int kMax = 44;
  double u[kMax], v[kMax];
  asymptotic_coeffs(u, v, kMax);
  int n = terms > 0 ? terms : kMax;
  double zeta = 2.0 / 3.0 * std::pow(z, 1.5);
  double su_m = 0, sv_m = 0, su_p = 0, sv_p = 0;
  double zp = 1.0, prev = 1e300;
  for (int k = 0; k < n; ++k) {
    double t = std::abs(u[k] * zp);
    if (terms <= 0 && t > prev) break;  // past the optimal truncation point
    prev = t;
    double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    su_m += sgn * u[k] * zp;
    sv_m += sgn * v[k] * zp;
    su_p += u[k] * zp;
    sv_p += v[k] * zp;
    zp /= zeta;
  }
  double q = std::pow(z, 0.25);
  ScaledAiry r;
  r.zeta = zeta;
  r.ai = su_m / (2.0 * kSqrtPi * q);
  r.aip = -q * sv_m / (2.0 * kSqrtPi);
  r.bi = su_p / (kSqrtPi * q);
  r.bip = q * sv_p / kSqrtPi;
  return r;
}

AiryEval airy_asymptotic_positive(double z) {
  auto s = airy_scaled_asymptotic(z, kAsymptoticTerms);
  double em = std::exp(-s.zeta), ep = std::exp(s.zeta);
  return {s.ai * em, s.aip * em, s.bi * ep, s.bip * ep};
}

AiryEval airy_asymptotic_negative(double z) {
  double u[kAsymptoticTerms], v[kAsymptoticTerms];
  asymptotic_coeffs(u, v, kAsymptoticTerms);
  double t = -z;
  double zeta = 2.0 / 3.0 * std::pow(t, 1.5);
  // Even/odd splits sum_k (-1)^k u_{2k} zeta^{-2k} and
  // sum_k (-1)^k u_{2k+1} zeta^{-2k-1}.
  double ue = 0, uo = 0, ve = 0, vo = 0;
  double zp = 1.0;
  for (int k = 0; k < kAsymptoticTerms; ++k) {
    double sgn = (k / 2 % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      ue += sgn * u[k] * zp;
      ve += sgn * v[k] * zp;
    } else {
      uo += sgn * u[k] * zp;
      vo += sgn * v[k] * zp;
    }
    zp /= zeta;
  }
  double q = std::pow(t, 0.25);
  double w = zeta - 0.25 * M_PI;
  double cw = std::cos(w), sw = std::sin(w);
  AiryEval r;
  r.Ai = (cw * ue + sw * uo) / (kSqrtPi * q);
  r.Aip = q / kSqrtPi * (sw * ve - cw * vo);
  r.Bi = (-sw * ue + cw * uo) / (kSqrtPi * q);
  r.Bip = q / kSqrtPi * (cw * ve + sw * vo);
  return r;
}

}  // namespace

AiryEval airy(double z) {
  if (z < -50.0 || z > 30.0)
    throw OutOfRangeError("airy argument outside documented range [-50, 30]");
  if (std::abs(z) <= kSeriesRadius) return airy_series(z);
  return z > 0 ? airy_asymptotic_positive(z) : airy_asymptotic_negative(z);
}

ScaledAiry airy_scaled_positive(double z) {
  if (!(z >= 0)) throw OutOfRangeError("airy_scaled_positive needs z >= 0");
  // The double-double series cancellation grows like e^{2 zeta} * 1e-31, the
  // adaptively truncated expansion error shrinks like e^{-2 zeta}; both are
  // ~1e-15 at z = 9, so the hand-off there is seamless.
  if (z <= 9.0) {
    auto e = airy_series(z);
    double zeta = 2.0 / 3.0 * std::pow(z, 1.5);
    double ep = std::exp(zeta), em = std::exp(-zeta);
    return {e.Ai * ep, e.Aip * ep, e.Bi * em, e.Bip * em, zeta};
  }
  return airy_scaled_asymptotic(z, 0);
}

double airy_first_zero() {
  double lo = -3.0, hi = -2.0;
  double flo = airy(lo).Ai;
  // Ai(-3) < 0 < Ai(-2); bisect to 1e-13 bracket, then one secant polish.
  for (int i = 0; i < 60 && hi - lo > 1e-13; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = airy(mid).Ai;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double fhi = airy(hi).Ai;
  if (fhi != flo) {
    double sec = hi - fhi * (hi - lo) / (fhi - flo);
    if (sec > -3.0 && sec < -2.0) return sec;
  }
  return 0.5 * (lo + hi);
}

}  // namespace umbilic
