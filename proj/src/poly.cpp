#include "umbilic/poly.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "umbilic/errors.hpp"

namespace umbilic {

namespace {
constexpr int kMaxParseExponent = 15;
constexpr int kMaxInternalExponent = 200;

double int_pow(double x, unsigned n) {
  double r = 1.0;
  while (n) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}
}  // namespace

const char* var_name(int v) {
  static const char* names[kPolyVars] = {"x", "y", "a", "b", "c", "eps"};
  return names[v];
}

PolyExpr PolyExpr::constant(double c) {
  PolyExpr p;
  p.add_term(Exponents{}, c);
  return p;
}

PolyExpr PolyExpr::variable(int v) {
  Exponents e{};
  e[v] = 1;
  return monomial(e, 1.0);
}

PolyExpr PolyExpr::monomial(const Exponents& e, double c) {
  PolyExpr p;
  p.add_term(e, c);
  return p;
}

void PolyExpr::add_term(const Exponents& e, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

void PolyExpr::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0.0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

double PolyExpr::eval(const std::array<double, kPolyVars>& v) const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (int i = 0; i < kPolyVars; ++i)
      if (e[i]) t *= int_pow(v[i], e[i]);
    sum += t;
  }
  return sum;
}

PolyExpr PolyExpr::differentiate(int var) const {
  PolyExpr out;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    out.add_term(d, c * static_cast<double>(e[var]));
  }
  return out;
}

PolyExpr PolyExpr::compose(const std::array<PolyExpr, kPolyVars>& subs) const {
  PolyExpr out;
  for (const auto& [e, c] : terms_) {
    PolyExpr t = PolyExpr::constant(c);
    for (int i = 0; i < kPolyVars; ++i)
      if (e[i]) t = t * subs[i].pow(e[i]);
    out += t;
  }
  return out;
}

PolyExpr PolyExpr::operator+(const PolyExpr& o) const {
  PolyExpr r = *this;
  r += o;
  return r;
}

PolyExpr& PolyExpr::operator+=(const PolyExpr& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

PolyExpr PolyExpr::operator-(const PolyExpr& o) const {
  PolyExpr r = *this;
  r -= o;
  return r;
}

PolyExpr& PolyExpr::operator-=(const PolyExpr& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

PolyExpr PolyExpr::operator-() const {
  PolyExpr r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

PolyExpr operator*(double s, const PolyExpr& p) {
  PolyExpr r;
  if (s == 0.0) return r;
  for (const auto& [e, c] : p.terms_) r.terms_.emplace(e, s * c);
  r.prune();
  return r;
}

PolyExpr PolyExpr::operator*(const PolyExpr& o) const {
  PolyExpr out;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e;
      for (int i = 0; i < kPolyVars; ++i) {
        int s = ea[i] + eb[i];
        if (s > kMaxInternalExponent)
          throw Error("exponent-overflow", "internal exponent overflow in product");
        e[i] = static_cast<std::uint8_t>(s);
      }
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

PolyExpr PolyExpr::pow(unsigned n) const {
  PolyExpr r = PolyExpr::constant(1.0);
  PolyExpr base = *this;
  while (n) {
    if (n & 1) r = r * base;
    if (n > 1) base = base * base;
    n >>= 1;
  }
  return r;
}

PolyExpr PolyExpr::divide_by_monomial(const Exponents& e, double c) const {
  if (c == 0.0) throw Error("divide-by-zero", "monomial divisor has zero coefficient");
  PolyExpr out;
  for (const auto& [ei, ci] : terms_) {
    Exponents d;
    for (int i = 0; i < kPolyVars; ++i) {
      if (ei[i] < e[i])
        throw Error("not-divisible",
                    "term " + PolyExpr::monomial(ei, ci).to_string() +
                        " not divisible by requested monomial");
      d[i] = static_cast<std::uint8_t>(ei[i] - e[i]);
    }
    out.add_term(d, ci / c);
  }
  return out;
}

int PolyExpr::total_degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms_) {
    (void)c;
    int d = 0;
    for (int i = 0; i < kPolyVars; ++i) d += e[i];
    deg = std::max(deg, d);
  }
  return deg;
}

int PolyExpr::max_exponent(int var) const {
  int m = 0;
  for (const auto& [e, c] : terms_) {
    (void)c;
    m = std::max(m, static_cast<int>(e[var]));
  }
  return m;
}

double PolyExpr::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

std::string PolyExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    double coeff = c;
    if (first) {
      if (coeff < 0) {
        os << "-";
        coeff = -coeff;
      }
    } else {
      os << (coeff < 0 ? " - " : " + ");
      coeff = std::abs(coeff);
    }
    first = false;
    bool has_var = false;
    for (int i = 0; i < kPolyVars; ++i) has_var = has_var || e[i] > 0;
    if (!has_var || coeff != 1.0) {
      os << coeff;
      if (has_var) os << "*";
    }
    bool first_var = true;
    for (int i = 0; i < kPolyVars; ++i) {
      if (!e[i]) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << var_name(i);
      if (e[i] > 1) os << "^" << static_cast<int>(e[i]);
    }
  }
  return os.str();
}

namespace {

struct Parser {
  std::string_view src;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= src.size();
  }
  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(pos, msg); }

  int parse_var() {
    skip_ws();
    std::size_t start = pos;
    while (pos < src.size() && std::isalpha(static_cast<unsigned char>(src[pos]))) ++pos;
    std::string_view name = src.substr(start, pos - start);
    for (int v = 0; v < kPolyVars; ++v)
      if (name == var_name(v)) return v;
    pos = start;
    fail("unknown variable name '" + std::string(name) + "'");
  }

  double parse_number() {
    skip_ws();
    const char* begin = src.data() + pos;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("expected number");
    pos += static_cast<std::size_t>(end - begin);
    return v;
  }

  int parse_exponent() {
    skip_ws();
    std::size_t start = pos;
    bool digits = false;
    long val = 0;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
      digits = true;
      val = val * 10 + (src[pos] - '0');
      if (val > 1000) break;
      ++pos;
    }
    if (!digits) fail("expected integer exponent");
    if (val > kMaxParseExponent) {
      pos = start;
      fail("exponent overflow (> " + std::to_string(kMaxParseExponent) + ")");
    }
    return static_cast<int>(val);
  }

  // factor := number | var ['^' int]
  void parse_factor(Exponents& e, double& coeff) {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      coeff *= parse_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      int v = parse_var();
      int exp = 1;
      if (peek() == '^') {
        ++pos;
        exp = parse_exponent();
      }
      int s = e[v] + exp;
      if (s > kMaxParseExponent) fail("exponent overflow (> 15)");
      e[v] = static_cast<std::uint8_t>(s);
      return;
    }
    fail("expected variable or number");
  }

  // term := factor ('*' factor)*
  void parse_term(PolyExpr& out, double sign) {
    Exponents e{};
    double coeff = sign;
    parse_factor(e, coeff);
    while (peek() == '*') {
      ++pos;
      parse_factor(e, coeff);
    }
    out += PolyExpr::monomial(e, coeff);
  }

  PolyExpr parse_expr() {
    PolyExpr out;
    double sign = 1.0;
    char c = peek();
    if (c == '+' || c == '-') {
      if (c == '-') sign = -1.0;
      ++pos;
    }
    parse_term(out, sign);
    while (!eof()) {
      c = peek();
      if (c == '+')
        sign = 1.0;
      else if (c == '-')
        sign = -1.0;
      else
        fail("expected '+' or '-'");
      ++pos;
      parse_term(out, sign);
    }
    return out;
  }
};

}  // namespace

PolyExpr PolyExpr::parse(std::string_view src) {
  Parser p{src};
  if (p.eof()) throw ParseError(0, "empty polynomial");
  return p.parse_expr();
}

}  // namespace umbilic
