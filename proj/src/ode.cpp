#include "umbilic/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace umbilic {

void Trajectory::push(double t, const double* s) {
  times_.push_back(t);
  data_.insert(data_.end(), s, s + dim_);
}

void Trajectory::replace_last(double t, const double* s) {
  times_.back() = t;
  std::copy(s, s + dim_, data_.end() - static_cast<std::ptrdiff_t>(dim_));
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Stepper {
  const OdeField& f;
  std::size_t n;
  std::vector<double> k1, k2, k3, k4, k5, k6, k7, tmp;

  Stepper(const OdeField& f_, std::size_t n_)
      : f(f_), n(n_), k1(n_), k2(n_), k3(n_), k4(n_), k5(n_), k6(n_), k7(n_), tmp(n_) {}

  // One step of size h from y (k1 must hold f(y)); writes the 5th-order result
  // into ynew and the embedded error estimate into err. Fills k7 = f(ynew).
  void step(const double* y, double h, double* ynew, double* err) {
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    f(tmp.data(), k2.data());
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(tmp.data(), k3.data());
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(tmp.data(), k4.data());
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(tmp.data(), k5.data());
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                           a65 * k5[i]);
    f(tmp.data(), k6.data());
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                            b6 * k6[i]);
    f(ynew, k7.data());
    for (std::size_t i = 0; i < n; ++i)
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                    e6 * k6[i] + e7 * k7[i]);
  }

  // Fixed step without error control, used for event interpolation.
  void substep(const double* y, double h, double* ynew) {
    f(y, k1.data());
    std::vector<double> e(n);
    step(y, h, ynew, e.data());
  }
};

double norm2(const double* y, std::size_t n) {
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += y[i] * y[i];
  return std::sqrt(s);
}

struct RunCallbacks {
  // Called after each accepted step with the previous and new state. Returning
  // true stops the integration (the callback has recorded its own terminal
  // data).
  std::function<bool(double t0, const double* y0, double t1, const double* y1)>
      on_step;
};

Trajectory run(const OdeField& f, std::size_t dim, std::span<const double> s0,
               double t0, double t1, const IntegratorConfig& cfg,
               const RunCallbacks* cb) {
  Trajectory traj(dim);
  std::vector<double> y(s0.begin(), s0.end()), ynew(dim), err(dim);
  traj.push(t0, y.data());

  const double span = t1 - t0;
  const double dir = span >= 0 ? 1.0 : -1.0;
  const double hmax = cfg.h_max > 0 ? cfg.h_max : std::abs(span);
  const double hmin = 1e-14 * std::abs(span);

  Stepper st(f, dim);
  f(y.data(), st.k1.data());

  double h = cfg.h_init > 0 ? cfg.h_init : std::min(hmax, 1e-4 * std::abs(span));
  h = std::max(h, hmin * 2);
  double t = t0;
  long steps = 0;

  while (dir * (t1 - t) > 0) {
    if (steps++ >= cfg.max_steps) {
      traj.terminal_reason = TerminalReason::MaxSteps;
      return traj;
    }
    if (h < hmin) {
      traj.terminal_reason = TerminalReason::StepFail;
      return traj;
    }
    bool last = false;
    if (dir * (t + dir * h - t1) >= 0) {
      h = dir * (t1 - t);
      last = true;
    }
    st.step(y.data(), dir * h, ynew.data(), err.data());

    double errnorm = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      double sc = cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      double e = err[i] / sc;
      errnorm += e * e;
    }
    errnorm = std::sqrt(errnorm / static_cast<double>(dim));

    if (errnorm <= 1.0) {
      double tnew = last ? t1 : t + dir * h;
      if (cfg.record || traj.size() == 1)
        traj.push(tnew, ynew.data());
      else
        traj.replace_last(tnew, ynew.data());

      if (norm2(ynew.data(), dim) > cfg.escape_radius) {
        traj.terminal_reason = TerminalReason::Escape;
        return traj;
      }
      if (cb && cb->on_step && cb->on_step(t, y.data(), tnew, ynew.data())) {
        traj.terminal_reason = TerminalReason::EventHit;
        return traj;
      }
      t = tnew;
      std::swap(y, ynew);
      std::swap(st.k1, st.k7);  // FSAL
      double fac = errnorm > 0 ? 0.9 * std::pow(errnorm, -0.2) : 5.0;
      h = std::min(hmax, h * std::clamp(fac, 0.2, 5.0));
    } else {
      double fac = 0.9 * std::pow(errnorm, -0.2);
      h *= std::clamp(fac, 0.1, 0.9);
    }
  }
  traj.terminal_reason = TerminalReason::TimeEnd;
  return traj;
}

}  // namespace

Trajectory integrate(const OdeField& f, std::size_t dim,
                     std::span<const double> s0, double t0, double t1,
                     const IntegratorConfig& cfg) {
  return run(f, dim, s0, t0, t1, cfg, nullptr);
}

EventResult integrate_to_event(const OdeField& f, std::size_t dim,
                               std::span<const double> s0, double t0, double t1,
                               const EventFn& event, EventDirection dir,
                               const IntegratorConfig& cfg) {
  EventResult res;

  double g_start = event(s0.data());
  if (std::abs(g_start) < 1e-12) {
    res.t_hit = t0;
    res.state_hit.assign(s0.begin(), s0.end());
    res.trajectory = Trajectory(dim);
    res.trajectory.push(t0, s0.data());
    res.trajectory.terminal_reason = TerminalReason::EventHit;
    return res;
  }

  Stepper interp(f, dim);
  std::vector<double> hit_state(dim);
  double hit_time = 0;
  bool found = false;

  auto crossing = [&](double g0, double g1) {
    switch (dir) {
      case EventDirection::Rising: return g0 < 0 && g1 >= 0;
      case EventDirection::Falling: return g0 > 0 && g1 <= 0;
      case EventDirection::Any: return (g0 < 0 && g1 >= 0) || (g0 > 0 && g1 <= 0);
    }
    return false;
  };

  RunCallbacks cb;
  cb.on_step = [&](double ta, const double* ya, double tb, const double* yb) {
    double ga = event(ya), gb = event(yb);
    if (!crossing(ga, gb)) return false;
    // Bracketing bisection on the sub-step, re-integrating from ya each probe.
    double lo = 0.0, hi = tb - ta;
    double glo = ga;
    std::vector<double> mid_state(yb, yb + dim);
    double gmid = gb;
    double tau = hi;
    for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-14 && std::abs(gmid) >= 1e-12;
         ++it) {
      tau = 0.5 * (lo + hi);
      interp.substep(ya, tau, mid_state.data());
      gmid = event(mid_state.data());
      if ((glo < 0) == (gmid < 0) && gmid != 0.0) {
        lo = tau;
        glo = gmid;
      } else {
        hi = tau;
      }
    }
    interp.substep(ya, tau, mid_state.data());
    hit_state = mid_state;
    hit_time = ta + tau;
    found = true;
    return true;
  };

  res.trajectory = run(f, dim, s0, t0, t1, cfg, &cb);
  if (found) {
    res.t_hit = hit_time;
    res.state_hit = hit_state;
    res.trajectory.replace_last(hit_time, hit_state.data());
  }
  return res;
}

}  // namespace umbilic
