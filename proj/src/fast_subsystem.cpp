#include "umbilic/fast_subsystem.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "umbilic/errors.hpp"

namespace umbilic {

namespace {

constexpr double kDegenerateDet = 1e-7;
constexpr double kImagTol = 1e-8;
constexpr double kDedupe = 1e-9;
// Double (and triple) roots split by O(eps^(1/2..1/3)) under rounding; fold
// collisions are merged at this coarser radius when both members look
// degenerate.
constexpr double kFoldMerge = 3e-5;

EqKind kind_of(double det, double trace) {
  if (std::abs(det) < kDegenerateDet) return EqKind::Degenerate;
  if (det < 0) return EqKind::Saddle;
  return trace < 0 ? EqKind::Sink : EqKind::Source;
}

EquilibriumInfo make_info(const FastParams& p, double x, double y) {
  EquilibriumInfo e;
  e.x = x;
  e.y = y;
  e.det = 4 * x * y - p.a * p.a;
  e.trace = 2 * (x + y);
  e.kind = kind_of(e.det, e.trace);
  return e;
}

struct QuarticRoots {
  std::vector<double> real;
  // Real parts of conjugate pairs with small imaginary part: candidates for
  // root collisions pushed slightly off the axis by rounding.
  std::vector<double> near_real;
};

// Roots of x^4 + p3 x^3 + p2 x^2 + p1 x + p0 via companion-matrix
// eigenvalues.
QuarticRoots quartic_real_roots(double p3, double p2, double p1, double p0) {
  Eigen::Matrix4d C = Eigen::Matrix4d::Zero();
  C(1, 0) = C(2, 1) = C(3, 2) = 1.0;
  C(0, 3) = -p0;
  C(1, 3) = -p1;
  C(2, 3) = -p2;
  C(3, 3) = -p3;
  Eigen::EigenSolver<Eigen::Matrix4d> es(C);
  QuarticRoots out;
  for (int i = 0; i < 4; ++i) {
    auto z = es.eigenvalues()[i];
    if (std::abs(z.imag()) < kImagTol)
      out.real.push_back(z.real());
    else if (z.imag() > 0 && z.imag() < kFoldMerge)
      out.near_real.push_back(z.real());
  }
  std::sort(out.real.begin(), out.real.end());
  return out;
}

}  // namespace

const char* to_string(FastConfig c) {
  switch (c) {
    case FastConfig::A: return "A";
    case FastConfig::B: return "B";
    case FastConfig::C: return "C";
    case FastConfig::D: return "D";
    case FastConfig::Bifurcation: return "bifurcation";
  }
  return "?";
}

const char* to_string(EqKind k) {
  switch (k) {
    case EqKind::Sink: return "sink";
    case EqKind::Source: return "source";
    case EqKind::Saddle: return "saddle";
    case EqKind::Degenerate: return "degenerate";
  }
  return "?";
}

std::array<double, 2> fast_field(const FastParams& p, double x, double y) {
  return {x * x + p.a * y + p.b, y * y + p.a * x + p.c};
}

std::vector<EquilibriumInfo> fast_equilibria(const FastParams& p, double tol) {
  std::vector<EquilibriumInfo> out;
  if (std::abs(p.a) > tol) {
    // Substituting y = -(x^2+b)/a into the second nullcline gives
    // x^4 + 2 b x^2 + a^3 x + (b^2 + a^2 c) = 0.
    auto roots =
        quartic_real_roots(0.0, 2 * p.b, p.a * p.a * p.a, p.b * p.b + p.a * p.a * p.c);
    std::vector<double> kept;
    for (double r : roots.real) {
      if (!kept.empty() && std::abs(r - kept.back()) < kDedupe) continue;
      kept.push_back(r);
    }
    // A collision pushed off the real axis by rounding is recovered from its
    // real part when the resulting equilibrium is degenerate.
    for (double r : roots.near_real) {
      bool close = false;
      for (double k : kept) close = close || std::abs(r - k) < kFoldMerge;
      if (close) continue;
      auto info = make_info(p, r, -(r * r + p.b) / p.a);
      if (info.kind == EqKind::Degenerate) kept.push_back(r);
    }
    std::sort(kept.begin(), kept.end());
    for (double x : kept) out.push_back(make_info(p, x, -(x * x + p.b) / p.a));
  } else {
    // a = 0: the nullclines are the line pairs x^2 = -b, y^2 = -c.
    if (p.b <= 0 && p.c <= 0) {
      double rx = std::sqrt(-p.b), ry = std::sqrt(-p.c);
      std::vector<double> xs = rx > 0 ? std::vector<double>{-rx, rx}
                                      : std::vector<double>{0.0};
      std::vector<double> ys = ry > 0 ? std::vector<double>{-ry, ry}
                                      : std::vector<double>{0.0};
      for (double x : xs)
        for (double y : ys) out.push_back(make_info(p, x, y));
    }
  }

  // Merge fold collisions: equilibria closer than the merge radius are a
  // multiple root split by rounding (distinct roots at that distance imply a
  // nearly singular Jacobian anyway), so the cluster collapses to a single
  // degenerate equilibrium at its mean.
  std::vector<EquilibriumInfo> merged;
  std::vector<bool> taken(out.size(), false);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (taken[i]) continue;
    double sx = out[i].x, sy = out[i].y;
    int n = 1;
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if (taken[j]) continue;
      if (std::hypot(out[j].x - out[i].x, out[j].y - out[i].y) < kFoldMerge) {
        taken[j] = true;
        sx += out[j].x;
        sy += out[j].y;
        ++n;
      }
    }
    if (n == 1) {
      merged.push_back(out[i]);
    } else {
      auto info = make_info(p, sx / n, sy / n);
      info.kind = EqKind::Degenerate;
      merged.push_back(info);
    }
  }

  std::sort(merged.begin(), merged.end(), [](const auto& l, const auto& r) {
    return l.x != r.x ? l.x < r.x : l.y < r.y;
  });
  return merged;
}

FastConfig classify_config(const FastParams& p) {
  auto eqs = fast_equilibria(p);
  int sinks = 0, sources = 0, saddles = 0, degen = 0;
  for (const auto& e : eqs) {
    switch (e.kind) {
      case EqKind::Sink: ++sinks; break;
      case EqKind::Source: ++sources; break;
      case EqKind::Saddle: ++saddles; break;
      case EqKind::Degenerate: ++degen; break;
    }
  }
  if (degen > 0) return FastConfig::Bifurcation;
  if (eqs.empty()) return FastConfig::A;
  if (saddles == 1 && sinks == 1 && sources == 0) return FastConfig::B;
  if (saddles == 1 && sources == 1 && sinks == 0) return FastConfig::C;
  if (saddles == 2 && sources == 1 && sinks == 1) return FastConfig::D;
  throw InconsistentCountError("equilibrium counts match no generic configuration");
}

std::vector<JumpOutcome> jump_outcomes(const FastParams& p, double delta, double nu,
                                       const IntegratorConfig& cfg, int launch_index,
                                       double t_cap) {
  auto eqs = fast_equilibria(p);
  int bif = launch_index;
  if (bif < 0) {
    double best = kDegenerateDet;
    for (std::size_t i = 0; i < eqs.size(); ++i)
      if (eqs[i].kind == EqKind::Degenerate && std::abs(eqs[i].det) < best) {
        best = std::abs(eqs[i].det);
        bif = static_cast<int>(i);
      }
  }
  if (bif < 0 || bif >= static_cast<int>(eqs.size()) ||
      eqs[bif].kind != EqKind::Degenerate)
    throw DegenerateError("no degenerate equilibrium: parameters not on the bifurcation set");
  const auto& q = eqs[bif];

  // Kernel direction of the Jacobian [[2x, a], [a, 2y]] at the fold.
  double J[2][2] = {{2 * q.x, p.a}, {p.a, 2 * q.y}};
  double kx, ky;
  if (std::abs(J[0][0]) + std::abs(J[0][1]) > std::abs(J[1][0]) + std::abs(J[1][1])) {
    kx = -J[0][1];
    ky = J[0][0];
  } else {
    kx = -J[1][1];
    ky = J[1][0];
  }
  double kn = std::hypot(kx, ky);
  if (kn == 0) {
    kx = 1;
    ky = 0;
    kn = 1;
  }
  kx /= kn;
  ky /= kn;
  const double tx = -ky, ty = kx;

  const OdeField field = [&p](const double* s, double* ds) {
    auto v = fast_field(p, s[0], s[1]);
    ds[0] = v[0];
    ds[1] = v[1];
  };

  // Capture radii: sink approach is exponential, the semi-stable approach to
  // a fold target is only algebraic, so the latter uses a coarser ball.
  constexpr double kSinkBall = 1e-6;
  constexpr double kFoldBall = 1e-3;

  std::vector<JumpOutcome> outcomes;
  const double offsets[6][2] = {{1, 0},    {-1, 0},   {1, 0.5},
                                {-1, 0.5}, {1, -0.5}, {-1, -0.5}};
  for (const auto& off : offsets) {
    double s0[2] = {q.x + delta * (off[0] * kx + off[1] * tx),
                    q.y + delta * (off[0] * ky + off[1] * ty)};
    JumpOutcome oc;
    oc.type = JumpOutcome::Type::Undecided;

    double t = 0;
    double state[2] = {s0[0], s0[1]};
    bool done = false;
    while (t < t_cap && !done) {
      // Step in chunks so equilibrium capture can stop the run early.
      double t_next = std::min(t + 25.0, t_cap);
      auto res = integrate_to_event(
          field, 2, {state, 2}, t, t_next,
          [nu](const double* s) { return s[0] + s[1] - 2 * nu; },
          EventDirection::Rising, cfg);
      if (res.hit()) {
        oc.type = JumpOutcome::Type::Escape;
        oc.exit_state = {res.state_hit[0], res.state_hit[1]};
        oc.flight_time = *res.t_hit;
        break;
      }
      const auto& traj = res.trajectory;
      for (std::size_t i = 0; i < traj.size() && !done; ++i) {
        auto st = traj.state(i);
        for (std::size_t e = 0; e < eqs.size(); ++e) {
          if (static_cast<int>(e) == bif) continue;
          double ball = eqs[e].kind == EqKind::Sink        ? kSinkBall
                        : eqs[e].kind == EqKind::Degenerate ? kFoldBall
                                                            : 0.0;
          if (ball == 0.0) continue;
          if (std::hypot(st[0] - eqs[e].x, st[1] - eqs[e].y) < ball) {
            oc.type = JumpOutcome::Type::ToEquilibrium;
            oc.equilibrium_index = static_cast<int>(e);
            oc.flight_time = traj.time(i);
            done = true;
            break;
          }
        }
      }
      if (traj.terminal_reason == TerminalReason::Escape ||
          traj.terminal_reason == TerminalReason::StepFail)
        break;
      auto fs = traj.final_state();
      state[0] = fs[0];
      state[1] = fs[1];
      t = traj.final_time();
    }
    // A probe that fell back onto the launch equilibrium was aimed at its
    // attracting sector; it is not an emanating candidate and is dropped.
    if (oc.type == JumpOutcome::Type::Undecided &&
        std::hypot(state[0] - q.x, state[1] - q.y) < 10 * delta)
      continue;
    outcomes.push_back(oc);
  }
  return outcomes;
}

}  // namespace umbilic
