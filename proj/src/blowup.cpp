#include "umbilic/blowup.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <optional>

#include "umbilic/errors.hpp"

namespace umbilic {

namespace {

constexpr double kWeights[6] = {1, 1, 1, 2, 2, 3};

int chart_index(ChartId c) { return static_cast<int>(c); }

struct SphereTuple {
  std::array<double, 6> bar;  // weighted-projective representative
  double r;
};

SphereTuple pack(const ChartPoint& p) {
  const auto& u = p.coords;
  switch (p.chart) {
    case ChartId::MinusY: return {{u[0], -1.0, u[2], u[3], u[4], u[5]}, u[1]};
    case ChartId::Eps: return {{u[0], u[1], u[2], u[3], u[4], 1.0}, u[5]};
    case ChartId::PlusA: return {{u[0], u[1], 1.0, u[3], u[4], u[5]}, u[2]};
    case ChartId::MinusA: return {{u[0], u[1], -1.0, u[3], u[4], u[5]}, u[2]};
    case ChartId::Exit:
      return {{1.0 + u[0], 1.0 - u[0], u[2], u[3], u[4], u[5]}, u[1]};
  }
  return {};
}

// Rescales a representative so that the target chart's gauge is 1 and reads
// off the chart coordinates. Empty when the gauge quantity is not positive.
std::optional<ChartPoint> unpack(ChartId chart, const SphereTuple& t) {
  double s = 0;
  switch (chart) {
    case ChartId::MinusY: s = -t.bar[1]; break;
    case ChartId::Eps:
      s = t.bar[5] > 0 ? std::cbrt(t.bar[5]) : 0.0;
      break;
    case ChartId::PlusA: s = t.bar[2]; break;
    case ChartId::MinusA: s = -t.bar[2]; break;
    case ChartId::Exit: s = (t.bar[0] + t.bar[1]) / 2.0; break;
  }
  if (!(s > 0)) return std::nullopt;
  std::array<double, 6> v;
  for (int i = 0; i < 6; ++i) v[i] = t.bar[i] / std::pow(s, kWeights[i]);
  ChartPoint out;
  out.chart = chart;
  switch (chart) {
    case ChartId::MinusY:
      out.coords = {v[0], t.r * s, v[2], v[3], v[4], v[5]};
      break;
    case ChartId::Eps:
      out.coords = {v[0], v[1], v[2], v[3], v[4], t.r * s};
      break;
    case ChartId::PlusA:
    case ChartId::MinusA:
      out.coords = {v[0], v[1], t.r * s, v[3], v[4], v[5]};
      break;
    case ChartId::Exit:
      out.coords = {v[0] - 1.0, t.r * s, v[2], v[3], v[4], v[5]};
      break;
  }
  return out;
}

PolyExpr var(int i) { return PolyExpr::variable(i); }

PolyExpr sym_det(const std::vector<std::vector<PolyExpr>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  PolyExpr det;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<PolyExpr>> minor(n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) minor[i - 1].push_back(m[i][k]);
    PolyExpr term = m[0][j] * sym_det(minor);
    if (j % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

// Generic directional pullback: W = adj(DPhi) (X o Phi) / (det DPhi * r^k),
// with k = 1 for the fast charts (desingularization) and 0 for the slow
// blow-up. Throws if the division is not exact.
std::vector<PolyExpr> pullback(const std::vector<PolyExpr>& comps,
                               const std::vector<PolyExpr>& map, int radial_slot,
                               bool divide_extra_r) {
  const std::size_t n = map.size();
  std::array<PolyExpr, kPolyVars> subs;
  for (std::size_t v = 0; v < n; ++v) subs[v] = map[v];

  std::vector<PolyExpr> composed(n);
  for (std::size_t j = 0; j < n; ++j) composed[j] = comps[j].compose(subs);

  std::vector<std::vector<PolyExpr>> M(n, std::vector<PolyExpr>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M[i][j] = map[i].differentiate(static_cast<int>(j));

  PolyExpr det = sym_det(M);
  if (!det.is_monomial() || det.is_zero())
    throw Error("pullback", "chart jacobian determinant is not a monomial");
  Exponents de = det.terms().begin()->first;
  double dc = det.terms().begin()->second;
  if (divide_extra_r) de[radial_slot] += 1;

  std::vector<PolyExpr> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    PolyExpr N;
    for (std::size_t j = 0; j < n; ++j) {
      if (composed[j].is_zero()) continue;
      // adj[i][j] = (-1)^{i+j} det(minor_{j,i}).
      std::vector<std::vector<PolyExpr>> minor(n - 1);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) minor[r < j ? r : r - 1].push_back(M[r][c]);
      }
      PolyExpr adj = sym_det(minor);
      if ((i + j) % 2 == 1) adj = -adj;
      N += adj * composed[j];
    }
    out[i] = N.divide_by_monomial(de, dc);
  }
  return out;
}

std::vector<PolyExpr> fast_field_polys(const FastSlowSystem& sys) {
  PolyExpr x = var(VarX), y = var(VarY), a = var(VarA), b = var(VarB),
           c = var(VarC), eps = var(VarEps);
  return {x * x + a * y + b + eps * sys.f_x(),
          y * y + a * x + c + eps * sys.f_y(),
          eps * sys.g_a(),
          eps * sys.g_b(),
          eps * sys.g_c(),
          PolyExpr()};
}

std::vector<PolyExpr> slow_flow_polys(const FastSlowSystem& sys) {
  PolyExpr x = var(VarX), y = var(VarY), a = var(VarA);
  std::array<PolyExpr, kPolyVars> psi_subs = {
      x, y, a, PolyExpr::parse("-x^2 - a*y"), PolyExpr::parse("-y^2 - a*x"),
      PolyExpr()};
  PolyExpr ga = sys.g_a().compose(psi_subs);
  PolyExpr gb = sys.g_b().compose(psi_subs);
  PolyExpr gc = sys.g_c().compose(psi_subs);
  return {a * gc - 2.0 * (y * gb) + (x * a - 2.0 * (y * y)) * ga,
          a * gb - 2.0 * (x * gc) + (y * a - 2.0 * (x * x)) * ga,
          (4.0 * (x * y) - a * a) * ga};
}

std::vector<std::complex<double>> sorted_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  std::vector<std::complex<double>> ev(m.rows());
  for (int i = 0; i < m.rows(); ++i) ev[i] = es.eigenvalues()[i];
  std::sort(ev.begin(), ev.end(), [](const auto& l, const auto& r) {
    return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
  });
  return ev;
}

}  // namespace

const char* to_string(ChartId c) {
  switch (c) {
    case ChartId::MinusY: return "minus-y";
    case ChartId::Eps: return "eps";
    case ChartId::PlusA: return "plus-a";
    case ChartId::MinusA: return "minus-a";
    case ChartId::Exit: return "exit";
  }
  return "?";
}

const std::array<const char*, 6>& chart_coord_names(ChartId c) {
  static const std::array<std::array<const char*, 6>, 5> names = {{
      {"x1", "r1", "a1", "b1", "c1", "eps1"},
      {"x2", "y2", "a2", "b2", "c2", "r2"},
      {"x3", "y3", "r3", "b3", "c3", "eps3"},
      {"x4", "y4", "r4", "b4", "c4", "eps4"},
      {"x5", "r5", "a5", "b5", "c5", "eps5"},
  }};
  return names[chart_index(c)];
}

int chart_radial_slot(ChartId c) {
  switch (c) {
    case ChartId::MinusY: return 1;
    case ChartId::Eps: return 5;
    case ChartId::PlusA: return 2;
    case ChartId::MinusA: return 2;
    case ChartId::Exit: return 1;
  }
  return 0;
}

std::array<PolyExpr, 6> chart_map_polys(ChartId c) {
  PolyExpr one = PolyExpr::constant(1.0);
  switch (c) {
    case ChartId::MinusY: {
      PolyExpr r = var(1);
      return {r * var(0), -r, r * var(2), r * r * var(3), r * r * var(4),
              r * r * r * var(5)};
    }
    case ChartId::Eps: {
      PolyExpr r = var(5);
      return {r * var(0), r * var(1), r * var(2), r * r * var(3), r * r * var(4),
              r * r * r};
    }
    case ChartId::PlusA: {
      PolyExpr r = var(2);
      return {r * var(0), r * var(1), r, r * r * var(3), r * r * var(4),
              r * r * r * var(5)};
    }
    case ChartId::MinusA: {
      PolyExpr r = var(2);
      return {r * var(0), r * var(1), -r, r * r * var(3), r * r * var(4),
              r * r * r * var(5)};
    }
    case ChartId::Exit: {
      PolyExpr r = var(1);
      return {r * (one + var(0)), r * (one - var(0)), r * var(2), r * r * var(3),
              r * r * var(4), r * r * r * var(5)};
    }
  }
  return {};
}

StateZ blow_up(const ChartPoint& p) {
  auto t = pack(p);
  StateZ s;
  s.x = t.bar[0] * t.r;
  s.y = t.bar[1] * t.r;
  s.a = t.bar[2] * t.r;
  s.b = t.bar[3] * t.r * t.r;
  s.c = t.bar[4] * t.r * t.r;
  s.eps = t.bar[5] * t.r * t.r * t.r;
  return s;
}

ChartPoint chart_lift(ChartId chart, const StateZ& s) {
  SphereTuple t{{s.x, s.y, s.a, s.b, s.c, s.eps}, 1.0};
  auto p = unpack(chart, t);
  if (!p)
    throw WrongSignError(std::string("state not in the domain of chart ") +
                         to_string(chart));
  return *p;
}

ChartPoint coordinate_change(ChartId from, ChartId to, const ChartPoint& p) {
  if (p.chart != from) throw Error("chart-mismatch", "point is not in the source chart");
  auto q = unpack(to, pack(p));
  if (!q)
    throw NotInOverlapError(std::string("point not in the overlap of ") +
                            to_string(from) + " and " + to_string(to));
  return *q;
}

BlowupAtlas::BlowupAtlas(const FastSlowSystem& sys) {
  auto comps = fast_field_polys(sys);
  for (int ci = 0; ci < 5; ++ci) {
    ChartId c = static_cast<ChartId>(ci);
    auto maps = chart_map_polys(c);
    std::vector<PolyExpr> mv(maps.begin(), maps.end());
    auto w = pullback(comps, mv, chart_radial_slot(c), /*divide_extra_r=*/true);
    for (int i = 0; i < 6; ++i) {
      fields_[ci][i] = w[i];
      for (int j = 0; j < 6; ++j) jacobians_[ci][i][j] = w[i].differentiate(j);
    }
  }
}

const std::array<PolyExpr, 6>& BlowupAtlas::field_polys(ChartId c) const {
  return fields_[chart_index(c)];
}

std::array<double, 6> BlowupAtlas::field(const ChartPoint& p) const {
  std::array<double, 6> out;
  for (int i = 0; i < 6; ++i) out[i] = fields_[chart_index(p.chart)][i].eval(p.coords);
  return out;
}

std::array<std::array<double, 6>, 6> BlowupAtlas::jacobian(const ChartPoint& p) const {
  std::array<std::array<double, 6>, 6> out;
  const auto& J = jacobians_[chart_index(p.chart)];
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) out[i][j] = J[i][j].eval(p.coords);
  return out;
}

int SlowBlowupAtlas::index(ChartId c) const {
  switch (c) {
    case ChartId::MinusY: return 0;
    case ChartId::PlusA: return 1;
    case ChartId::MinusA: return 2;
    case ChartId::Exit: return 3;
    default: throw Error("chart", "slow blow-up has no eps chart");
  }
}

SlowBlowupAtlas::SlowBlowupAtlas(const FastSlowSystem& sys) {
  auto comps = slow_flow_polys(sys);
  PolyExpr one = PolyExpr::constant(1.0);
  const ChartId ids[4] = {ChartId::MinusY, ChartId::PlusA, ChartId::MinusA,
                          ChartId::Exit};
  for (int k = 0; k < 4; ++k) {
    std::vector<PolyExpr> map;
    switch (ids[k]) {
      case ChartId::MinusY: {
        PolyExpr r = var(1);
        map = {r * var(0), -r, r * var(2)};
        break;
      }
      case ChartId::PlusA: {
        PolyExpr r = var(2);
        map = {r * var(0), r * var(1), r};
        break;
      }
      case ChartId::MinusA: {
        PolyExpr r = var(2);
        map = {r * var(0), r * var(1), -r};
        break;
      }
      default: {
        PolyExpr r = var(1);
        map = {r * (one + var(0)), r * (one - var(0)), r * var(2)};
        break;
      }
    }
    int radial = ids[k] == ChartId::PlusA || ids[k] == ChartId::MinusA ? 2 : 1;
    auto w = pullback(comps, map, radial, /*divide_extra_r=*/false);
    for (int i = 0; i < 3; ++i) {
      fields_[k][i] = w[i];
      for (int j = 0; j < 3; ++j) jacobians_[k][i][j] = w[i].differentiate(j);
    }
  }
}

const std::array<PolyExpr, 3>& SlowBlowupAtlas::field_polys(ChartId c) const {
  return fields_[index(c)];
}

std::array<double, 3> SlowBlowupAtlas::field(ChartId c,
                                             const std::array<double, 3>& u) const {
  std::array<double, kPolyVars> v = {u[0], u[1], u[2], 0, 0, 0};
  std::array<double, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = fields_[index(c)][i].eval(v);
  return out;
}

std::array<std::array<double, 3>, 3> SlowBlowupAtlas::jacobian(
    ChartId c, const std::array<double, 3>& u) const {
  std::array<double, kPolyVars> v = {u[0], u[1], u[2], 0, 0, 0};
  std::array<std::array<double, 3>, 3> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = jacobians_[index(c)][i][j].eval(v);
  return out;
}

BlownSlowVelocity blown_slow_flow_y1(const SlowBlowupAtlas& atlas, double x1,
                                     double r1, double a1) {
  BlownSlowVelocity out;
  out.v = atlas.field(ChartId::MinusY, {x1, r1, a1});
  out.reversed_region = 4 * x1 + a1 * a1 > 0;
  return out;
}

double exit_transition_x5(double x_k, double rho) {
  if (!(rho > 0) || rho > 1.0)
    throw OutOfRangeError("exit transition requires rho = r_k/nu in (0, 1]");
  if (x_k < 0) return -exit_transition_x5(-x_k, rho);
  if (x_k == 0.0) return 0.0;
  if (x_k == 1.0) return 1.0;
  const double q = std::abs(1 - x_k * x_k) / (2 * x_k);
  const double root = std::sqrt(q * q * rho * rho + 1.0);
  return x_k > 1.0 ? q * rho + root : -q * rho + root;
}

FoldedFlowInfo folded_flows(const FastSlowSystem& sys, ChartId chart, double u,
                            double v) {
  if (chart != ChartId::PlusA && chart != ChartId::MinusA)
    throw Error("chart", "folded flows live in the +-a charts");
  const double B0 = sys.B0(), C0 = sys.C0();
  if (B0 * C0 == 0.0) throw DegenerateError("folded flow degenerate: B0 C0 = 0");
  const double sgn = chart == ChartId::PlusA ? 1.0 : -1.0;

  FoldedFlowInfo out;
  out.velocity = {-2 * B0 * v + sgn * C0, -2 * C0 * u + sgn * B0};
  out.singularity = {sgn * B0 / (2 * C0), sgn * C0 / (2 * B0)};
  if (B0 * C0 > 0) {
    const double lam = 2 * std::sqrt(B0 * C0);
    out.type = FoldedType::FoldedSaddle;
    out.eigenvalues = {-lam, lam};
    const double rho = std::sqrt(B0 / C0);
    out.invariant_slopes = {-rho, rho};
    out.zeta_name = chart == ChartId::MinusA ? "zeta1" : "zeta6";
  } else {
    const double om = 2 * std::sqrt(-B0 * C0);
    out.type = FoldedType::FoldedCenter;
    out.eigenvalues = {std::complex<double>(0.0, -om), std::complex<double>(0.0, om)};
    out.invariant_slopes = {std::nan(""), std::nan("")};
    out.zeta_name = chart == ChartId::MinusA ? "zeta6" : "zeta1";
  }
  return out;
}

std::vector<NamedEquilibrium> named_equilibria(const FastSlowSystem& sys) {
  const double B0 = sys.B0(), C0 = sys.C0();
  if (B0 * C0 == 0.0) throw DegenerateError("named equilibria need B0 C0 != 0");

  BlowupAtlas atlas(sys);
  SlowBlowupAtlas slow(sys);

  std::vector<NamedEquilibrium> out;
  auto add_fast = [&](const std::string& name, ChartId chart,
                      const std::array<double, 6>& coords) {
    NamedEquilibrium e;
    e.name = name;
    e.chart = chart;
    e.coords = coords;
    e.kind = EquilibriumFieldKind::FastChart;
    auto J = atlas.jacobian({chart, coords});
    Eigen::MatrixXd m(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) m(i, j) = J[i][j];
    e.eigenvalues = sorted_eigenvalues(m);
    out.push_back(std::move(e));
  };
  auto add_slow = [&](const std::string& name, ChartId chart, double u0, double u1,
                      double u2, const std::array<double, 6>& coords) {
    NamedEquilibrium e;
    e.name = name;
    e.chart = chart;
    e.coords = coords;
    e.kind = EquilibriumFieldKind::SlowFlow;
    auto J = slow.jacobian(chart, {u0, u1, u2});
    Eigen::MatrixXd m(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = J[i][j];
    e.eigenvalues = sorted_eigenvalues(m);
    out.push_back(std::move(e));
  };

  add_fast("q1", ChartId::MinusY, {0, 0, 0, 0, 0, 0});
  add_fast("q2", ChartId::MinusY, {-1, 0, 0, 0, 0, 0});
  add_fast("q4", ChartId::Exit, {-1, 0, 0, 0, 0, 0});
  add_fast("q5", ChartId::Exit, {0, 0, 0, 0, 0, 0});
  add_fast("q6", ChartId::Exit, {1, 0, 0, 0, 0, 0});

  // zeta1 on the extended fold surface; b1, c1 filled from the critical
  // manifold equations so the full chart field vanishes there too.
  {
    double x1 = -B0 * B0 / (C0 * C0), a1 = -2 * B0 / C0;
    add_slow("zeta1", ChartId::MinusY, x1, 0, a1,
             {x1, 0, a1, a1 - x1 * x1, -1 - a1 * x1, 0});
  }

  if (B0 * C0 > 0) {
    const double rho = std::sqrt(B0 / C0);
    for (int s = 0; s < 2; ++s) {
      double x1 = s == 0 ? -rho : rho;
      add_slow(s == 0 ? "zeta2" : "zeta3", ChartId::MinusY, x1, 0, 0,
               {x1, 0, 0, -x1 * x1, -1, 0});
    }

    // zeta5 (and zeta4 when representable) in the exit chart, refined by
    // Newton iteration on the sphere restriction of the blown-up slow flow.
    auto exit_zeta = [&](const std::string& name, double xbar,
                         double ybar) -> void {
      double s = (xbar + ybar) / 2.0;
      if (!(s > 0)) return;  // outside the atlas (see named_equilibria docs)
      double x5 = (xbar - ybar) / (xbar + ybar), a5 = 0.0;
      for (int it = 0; it < 50; ++it) {
        auto f = slow.field(ChartId::Exit, {x5, 0, a5});
        auto J = slow.jacobian(ChartId::Exit, {x5, 0, a5});
        // Newton step on the (x5, a5) components within {r5 = 0}.
        double a = J[0][0], b = J[0][2], c = J[2][0], d = J[2][2];
        double det = a * d - b * c;
        if (det == 0) break;
        double dx = (d * f[0] - b * f[2]) / det;
        double da = (-c * f[0] + a * f[2]) / det;
        x5 -= dx;
        a5 -= da;
        if (std::abs(dx) + std::abs(da) < 1e-14) break;
      }
      double b5 = -(1 + x5 * x5 + a5) - x5 * (2 - a5);
      double c5 = -(1 + x5 * x5 + a5) + x5 * (2 - a5);
      add_slow(name, ChartId::Exit, x5, 0, a5, {x5, 0, a5, b5, c5, 0});
    };
    exit_zeta("zeta5", rho, 1.0);
    exit_zeta("zeta4", -rho, 1.0);
  }

  // zeta6: the folded singularity of the flow on the +a (B0 C0 > 0) or -a
  // (B0 C0 < 0) sphere critical manifold.
  {
    ChartId chart = B0 * C0 > 0 ? ChartId::PlusA : ChartId::MinusA;
    auto ff = folded_flows(sys, chart, 0, 0);
    NamedEquilibrium e;
    e.name = "zeta6";
    e.chart = chart;
    double u = ff.singularity[0], v = ff.singularity[1];
    e.coords = {u, v, 0, -u * u - (chart == ChartId::PlusA ? v : -v),
                -v * v - (chart == ChartId::PlusA ? u : -u), 0};
    e.kind = EquilibriumFieldKind::FoldedFlow;
    e.eigenvalues = {ff.eigenvalues[0], ff.eigenvalues[1]};
    out.push_back(std::move(e));
  }

  return out;
}

}  // namespace umbilic
