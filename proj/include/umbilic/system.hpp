#pragma once

#include <array>
#include <string>

#include "umbilic/poly.hpp"

namespace umbilic {

// Phase point of the five-dimensional system; eps rides along as a parameter.
struct StateZ {
  double x = 0, y = 0, a = 0, b = 0, c = 0;
  double eps = 0;

  std::array<double, kPolyVars> as_array() const { return {x, y, a, b, c, eps}; }
};

// The fast-slow gradient system
//   x' = x^2 + a y + b + eps f_x,   y' = y^2 + a x + c + eps f_y,
//   a' = eps g_a,  b' = eps g_b,  c' = eps g_c,
// with polynomial slow/perturbation functions. Immutable after construction.
class FastSlowSystem {
public:
  FastSlowSystem(PolyExpr g_a, PolyExpr g_b, PolyExpr g_c,
                 PolyExpr f_x = PolyExpr(), PolyExpr f_y = PolyExpr(),
                 std::string name = {});

  // Convenience constructor for constant slow drift (f = 0).
  static FastSlowSystem constant_drift(double ga, double gb, double gc,
                                       std::string name = {});

  const PolyExpr& g_a() const { return g_a_; }
  const PolyExpr& g_b() const { return g_b_; }
  const PolyExpr& g_c() const { return g_c_; }
  const PolyExpr& f_x() const { return f_x_; }
  const PolyExpr& f_y() const { return f_y_; }
  const std::string& name() const { return name_; }

  // Constant terms g_a(0), g_b(0), g_c(0).
  double A0() const { return A0_; }
  double B0() const { return B0_; }
  double C0() const { return C0_; }

private:
  PolyExpr g_a_, g_b_, g_c_, f_x_, f_y_;
  std::string name_;
  double A0_, B0_, C0_;
};

// Velocity of the fast-time field at state s with parameter eps; the trivial
// eps-component (identically 0) is omitted.
std::array<double, 5> eval_fast_field(const FastSlowSystem& sys, const StateZ& s,
                                      double eps);

struct PotentialData {
  double V;
  std::array<double, 2> grad;
  std::array<std::array<double, 2>, 2> hess;
  double hess_det;  // 4xy - a^2
};

// Potential V = x^3/3 + y^3/3 + a x y + b x + c y with gradient and Hessian.
PotentialData potential_grad_hess(const StateZ& s);

}  // namespace umbilic
