#pragma once

#include <string>
#include <vector>

#include "umbilic/poly.hpp"

namespace umbilic {

struct GermCodimension {
  int codim = 0;
  // Monomial representatives of a basis of m / Jacobi-ideal (as strings,
  // degree-lexicographic order).
  std::vector<std::string> basis;
};

// Codimension of a polynomial germ (vanishing value and gradient at 0) as
// dim of m / <partial derivatives>, computed by row reduction on the monomial
// space of degrees 1..max_degree restricted to the variables actually present
// in the germ. Throws DegreeTooLow if the codimension has not stabilized
// between max_degree-1 and max_degree, and Error("invalid-germ") if the germ
// has constant or linear terms or involves variables other than x, y.
GermCodimension germ_codimension(const PolyExpr& f, int max_degree = 6);

}  // namespace umbilic
