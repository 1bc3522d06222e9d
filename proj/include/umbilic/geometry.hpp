#pragma once

#include <array>

#include "umbilic/poly.hpp"
#include "umbilic/system.hpp"

namespace umbilic {

// Classification of a point of the critical manifold, parametrized by
// (x, y, a). Regular points are labelled by the fast-subsystem stability of
// the corresponding equilibrium; singular points (4xy - a^2 = 0) split into
// the fold surface, the cusp line x = y = a/2 and the umbilic at the origin.
enum class StratumLabel {
  RegularAttracting,
  RegularRepelling,
  RegularSaddle,
  Fold,
  Cusp,
  HyperbolicUmbilic,
};

const char* to_string(StratumLabel s);

// Parametrization of the critical manifold: b = -x^2 - a y, c = -y^2 - a x.
StateZ psi(double x, double y, double a);

// Projection of psi onto the slow variables: (x,y,a) -> (a, b, c).
std::array<double, 3> catastrophe_map(double x, double y, double a);

// det of the catastrophe-map Jacobian, identically 4xy - a^2.
double catastrophe_jacobian_det(double x, double y, double a);

// The catastrophe map as exact polynomials (components in a, b, c order).
std::array<PolyExpr, 3> catastrophe_map_polys();

StratumLabel stratify(double x, double y, double a, double tol = 1e-9);

}  // namespace umbilic
