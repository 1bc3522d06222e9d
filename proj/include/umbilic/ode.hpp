#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace umbilic {

// Autonomous right-hand side: writes d/dt state into `ds`.
using OdeField = std::function<void(const double* s, double* ds)>;

// Scalar section function for event detection.
using EventFn = std::function<double(const double* s)>;

enum class EventDirection { Rising, Falling, Any };

enum class TerminalReason { TimeEnd, EventHit, Escape, StepFail, MaxSteps };

struct IntegratorConfig {
  double rtol = 1e-9;
  double atol = 1e-11;
  double h_init = 0.0;  // 0: automatic
  double h_max = 0.0;   // 0: |t1 - t0|
  long max_steps = 10'000'000;
  double escape_radius = 1e3;
  bool record = true;  // store every accepted step in the trajectory
};

// Time-stamped states from one integration run. Times are strictly monotone
// (decreasing for backward runs); first entry is the initial condition.
class Trajectory {
public:
  Trajectory() = default;
  Trajectory(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return times_.size(); }
  double time(std::size_t i) const { return times_[i]; }
  std::span<const double> state(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  double final_time() const { return times_.back(); }
  std::span<const double> final_state() const { return state(size() - 1); }
  const std::vector<double>& times() const { return times_; }

  TerminalReason terminal_reason = TerminalReason::TimeEnd;

  void push(double t, const double* s);
  void replace_last(double t, const double* s);

private:
  std::size_t dim_ = 0;
  std::vector<double> times_;
  std::vector<double> data_;
};

// Adaptive explicit Runge-Kutta 5(4) (Dormand-Prince) integration from t0 to
// t1 (backward allowed). Local error is controlled against
// rtol*|state| + atol per component.
Trajectory integrate(const OdeField& f, std::size_t dim,
                     std::span<const double> s0, double t0, double t1,
                     const IntegratorConfig& cfg = {});

struct EventResult {
  // Set when the event fired; state_hit is interpolated at t_hit.
  std::optional<double> t_hit;
  std::vector<double> state_hit;
  Trajectory trajectory;
  bool hit() const { return t_hit.has_value(); }
};

// Integrates until `event` crosses zero in the requested direction, refining
// the hit by bisection (with local re-integration for interpolation) until
// |event| < 1e-12 or the time bracket is below 1e-14. A start state already
// on the section (|event| < 1e-12) reports an immediate hit.
EventResult integrate_to_event(const OdeField& f, std::size_t dim,
                               std::span<const double> s0, double t0, double t1,
                               const EventFn& event,
                               EventDirection dir = EventDirection::Any,
                               const IntegratorConfig& cfg = {});

}  // namespace umbilic
