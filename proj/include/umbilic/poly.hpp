#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace umbilic {

// Sparse multivariate polynomial over the six variables (x, y, a, b, c, eps),
// stored as exponent tuple -> coefficient. Arithmetic is exact (no truncation);
// the same type doubles as polynomial space in chart coordinates, where the
// six slots are reinterpreted in chart order.
inline constexpr int kPolyVars = 6;
using Exponents = std::array<std::uint8_t, kPolyVars>;

enum Var : int { VarX = 0, VarY = 1, VarA = 2, VarB = 3, VarC = 4, VarEps = 5 };

const char* var_name(int v);

class PolyExpr {
public:
  PolyExpr() = default;

  static PolyExpr constant(double c);
  static PolyExpr variable(int v);
  static PolyExpr monomial(const Exponents& e, double c);

  // Parses a sum of signed monomials over {x,y,a,b,c,eps} with '*', '^',
  // integer exponents and decimal coefficients, e.g. "x^2 + a*y - 0.5*b".
  // Throws ParseError (with byte offset) on malformed input, unknown variable
  // names, or exponents above 15.
  static PolyExpr parse(std::string_view src);

  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }
  const std::map<Exponents, double>& terms() const { return terms_; }

  double eval(const std::array<double, kPolyVars>& v) const;
  PolyExpr differentiate(int var) const;

  // Substitutes subs[v] for variable v; result lives in the variable space of
  // the substituted polynomials.
  PolyExpr compose(const std::array<PolyExpr, kPolyVars>& subs) const;

  PolyExpr operator+(const PolyExpr& o) const;
  PolyExpr operator-(const PolyExpr& o) const;
  PolyExpr operator*(const PolyExpr& o) const;
  PolyExpr operator-() const;
  PolyExpr& operator+=(const PolyExpr& o);
  PolyExpr& operator-=(const PolyExpr& o);
  friend PolyExpr operator*(double s, const PolyExpr& p);
  PolyExpr pow(unsigned n) const;

  // Exact division by c * prod(v^e). Throws if any term is not divisible.
  PolyExpr divide_by_monomial(const Exponents& e, double c) const;

  // True if the polynomial is a single term (or zero).
  bool is_monomial() const { return terms_.size() <= 1; }

  int total_degree() const;
  int max_exponent(int var) const;
  double coefficient(const Exponents& e) const;
  bool operator==(const PolyExpr& o) const { return terms_ == o.terms_; }

  std::string to_string() const;

private:
  void add_term(const Exponents& e, double c);
  void prune();
  std::map<Exponents, double> terms_;
};

}  // namespace umbilic
