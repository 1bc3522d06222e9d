#include "umbilic/geometry.hpp"

#include <cmath>

namespace umbilic {

const char* to_string(StratumLabel s) {
  switch (s) {
    case StratumLabel::RegularAttracting: return "regular-attracting";
    case StratumLabel::RegularRepelling: return "regular-repelling";
    case StratumLabel::RegularSaddle: return "regular-saddle";
    case StratumLabel::Fold: return "fold";
    case StratumLabel::Cusp: return "cusp";
    case StratumLabel::HyperbolicUmbilic: return "hyperbolic-umbilic";
  }
  return "?";
}

StateZ psi(double x, double y, double a) {
  StateZ s;
  s.x = x;
  s.y = y;
  s.a = a;
  s.b = -x * x - a * y;
  s.c = -y * y - a * x;
  return s;
}

std::array<double, 3> catastrophe_map(double x, double y, double a) {
  return {a, -x * x - a * y, -y * y - a * x};
}

double catastrophe_jacobian_det(double x, double y, double a) {
  return 4.0 * x * y - a * a;
}

std::array<PolyExpr, 3> catastrophe_map_polys() {
  return {PolyExpr::parse("a"), PolyExpr::parse("-x^2 - a*y"),
          PolyExpr::parse("-y^2 - a*x")};
}

StratumLabel stratify(double x, double y, double a, double tol) {
  const double det = 4.0 * x * y - a * a;
  if (std::abs(det) <= tol) {
    if (std::abs(x) <= tol && std::abs(y) <= tol && std::abs(a) <= tol)
      return StratumLabel::HyperbolicUmbilic;
    if (std::abs(x - y) <= tol && std::abs(x - a / 2.0) <= tol)
      return StratumLabel::Cusp;
    return StratumLabel::Fold;
  }
  if (det < 0) return StratumLabel::RegularSaddle;
  const double trace = 2.0 * (x + y);
  return trace < 0 ? StratumLabel::RegularAttracting
                   : StratumLabel::RegularRepelling;
}

}  // namespace umbilic
