#include "umbilic/germ.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "umbilic/errors.hpp"

namespace umbilic {

namespace {

constexpr double kPivotTol = 1e-10;

struct Mono {
  int ex, ey;
  int degree() const { return ex + ey; }
  bool operator<(const Mono& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    return ey < o.ey;  // within a degree: x^d, x^{d-1}y, ..., y^d
  }
  bool operator==(const Mono& o) const { return ex == o.ex && ey == o.ey; }
};

std::string mono_name(const Mono& m) {
  std::string s;
  auto app = [&](const char* v, int e) {
    if (!e) return;
    if (!s.empty()) s += "*";
    s += v;
    if (e > 1) s += "^" + std::to_string(e);
  };
  app("x", m.ex);
  app("y", m.ey);
  return s.empty() ? "1" : s;
}

// Computes the codimension in the jet space of degrees 1..deg.
GermCodimension codim_at_degree(const std::vector<std::pair<Mono, double>>& fterms,
                                bool use_x, bool use_y, int deg) {
  // Monomial columns of degree 1..deg in the used variables.
  std::vector<Mono> cols;
  for (int d = 1; d <= deg; ++d)
    for (int ey = 0; ey <= d; ++ey) {
      Mono m{d - ey, ey};
      if ((m.ex > 0 && !use_x) || (m.ey > 0 && !use_y)) continue;
      cols.push_back(m);
    }
  std::sort(cols.begin(), cols.end());
  std::map<std::pair<int, int>, int> col_index;
  for (std::size_t i = 0; i < cols.size(); ++i)
    col_index[{cols[i].ex, cols[i].ey}] = static_cast<int>(i);

  // Partial derivatives of f.
  std::vector<std::vector<std::pair<Mono, double>>> partials;
  for (int v = 0; v < 2; ++v) {
    if ((v == 0 && !use_x) || (v == 1 && !use_y)) continue;
    std::vector<std::pair<Mono, double>> d;
    for (const auto& [m, c] : fterms) {
      int e = v == 0 ? m.ex : m.ey;
      if (!e) continue;
      Mono dm = v == 0 ? Mono{m.ex - 1, m.ey} : Mono{m.ex, m.ey - 1};
      d.emplace_back(dm, c * e);
    }
    if (!d.empty()) partials.push_back(std::move(d));
  }

  // Rows: truncations of m * partial to degrees <= deg, for all multiplier
  // monomials m (including 1) that leave at least one term below the cutoff.
  std::vector<std::vector<double>> rows;
  for (const auto& part : partials) {
    int mindeg = deg;
    for (const auto& [m, c] : part) {
      (void)c;
      mindeg = std::min(mindeg, m.degree());
    }
    for (int d = 0; d + mindeg <= deg; ++d)
      for (int ey = 0; ey <= d; ++ey) {
        Mono mult{d - ey, ey};
        if ((mult.ex > 0 && !use_x) || (mult.ey > 0 && !use_y)) continue;
        std::vector<double> row(cols.size(), 0.0);
        bool nonzero = false;
        for (const auto& [m, c] : part) {
          Mono p{m.ex + mult.ex, m.ey + mult.ey};
          if (p.degree() > deg) continue;
          row[col_index.at({p.ex, p.ey})] += c;
          nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(row));
      }
  }

  // Normalize rows, then eliminate columns in degree-lex order.
  for (auto& r : rows) {
    double m = 0;
    for (double v : r) m = std::max(m, std::abs(v));
    if (m > 0)
      for (double& v : r) v /= m;
  }

  std::vector<bool> used(rows.size(), false);
  GermCodimension out;
  int rank = 0;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    int pivot = -1;
    double best = kPivotTol;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r]) continue;
      if (std::abs(rows[r][c]) > best) {
        best = std::abs(rows[r][c]);
        pivot = static_cast<int>(r);
      }
    }
    if (pivot < 0) {
      out.basis.push_back(mono_name(cols[c]));
      continue;
    }
    used[pivot] = true;
    ++rank;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) == pivot || rows[r][c] == 0.0) continue;
      double f = rows[r][c] / rows[pivot][c];
      for (std::size_t k = c; k < cols.size(); ++k) rows[r][k] -= f * rows[pivot][k];
      rows[r][c] = 0.0;
    }
  }
  out.codim = static_cast<int>(cols.size()) - rank;
  return out;
}

}  // namespace

GermCodimension germ_codimension(const PolyExpr& f, int max_degree) {
  if (max_degree < 2) throw Error("invalid-argument", "max_degree must be >= 2");
  std::vector<std::pair<Mono, double>> fterms;
  bool use_x = false, use_y = false;
  for (const auto& [e, c] : f.terms()) {
    for (int v = 2; v < kPolyVars; ++v)
      if (e[v]) throw Error("invalid-germ", "germ must involve only x and y");
    Mono m{e[VarX], e[VarY]};
    if (m.degree() < 2)
      throw Error("invalid-germ", "germ must have vanishing value and gradient at 0");
    use_x = use_x || m.ex > 0;
    use_y = use_y || m.ey > 0;
    fterms.emplace_back(m, c);
  }
  if (fterms.empty()) throw Error("invalid-germ", "zero germ has infinite codimension");

  GermCodimension lo = codim_at_degree(fterms, use_x, use_y, max_degree - 1);
  GermCodimension hi = codim_at_degree(fterms, use_x, use_y, max_degree);
  if (lo.codim != hi.codim)
    throw DegreeTooLowError("codimension did not stabilize between degrees " +
                            std::to_string(max_degree - 1) + " and " +
                            std::to_string(max_degree));
  return hi;
}

}  // namespace umbilic
