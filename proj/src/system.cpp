#include "umbilic/system.hpp"

namespace umbilic {

FastSlowSystem::FastSlowSystem(PolyExpr g_a, PolyExpr g_b, PolyExpr g_c,
                               PolyExpr f_x, PolyExpr f_y, std::string name)
    : g_a_(std::move(g_a)),
      g_b_(std::move(g_b)),
      g_c_(std::move(g_c)),
      f_x_(std::move(f_x)),
      f_y_(std::move(f_y)),
      name_(std::move(name)) {
  const Exponents zero{};
  A0_ = g_a_.coefficient(zero);
  B0_ = g_b_.coefficient(zero);
  C0_ = g_c_.coefficient(zero);
}

FastSlowSystem FastSlowSystem::constant_drift(double ga, double gb, double gc,
                                              std::string name) {
  return FastSlowSystem(PolyExpr::constant(ga), PolyExpr::constant(gb),
                        PolyExpr::constant(gc), PolyExpr(), PolyExpr(),
                        std::move(name));
}

std::array<double, 5> eval_fast_field(const FastSlowSystem& sys, const StateZ& s,
                                      double eps) {
  std::array<double, kPolyVars> v = {s.x, s.y, s.a, s.b, s.c, eps};
  return {
      s.x * s.x + s.a * s.y + s.b + eps * sys.f_x().eval(v),
      s.y * s.y + s.a * s.x + s.c + eps * sys.f_y().eval(v),
      eps * sys.g_a().eval(v),
      eps * sys.g_b().eval(v),
      eps * sys.g_c().eval(v),
  };
}

PotentialData potential_grad_hess(const StateZ& s) {
  PotentialData d;
  d.V = s.x * s.x * s.x / 3.0 + s.y * s.y * s.y / 3.0 + s.a * s.x * s.y +
        s.b * s.x + s.c * s.y;
  d.grad = {s.x * s.x + s.a * s.y + s.b, s.y * s.y + s.a * s.x + s.c};
  d.hess = {{{2.0 * s.x, s.a}, {s.a, 2.0 * s.y}}};
  d.hess_det = 4.0 * s.x * s.y - s.a * s.a;
  return d;
}

}  // namespace umbilic
