#pragma once

// Shared machinery for the solver loops: constants, timing, step rules,
// stopping and trace bookkeeping.

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "sfw/solvers.hpp"

namespace sfw::detail {

/// Radii are never allowed to reach zero; a zero ball would be degenerate.
inline constexpr double kRadiusFloor = 1e-150;
/// Feasibility slack for iterates produced by long runs of convex updates.
inline constexpr double kIterateTol = 1e-7;

class Stopwatch {
 public:
  Stopwatch() : start_(Clock::now()) {}
  void pause() {
    if (!paused_) {
      paused_at_ = Clock::now();
      paused_ = true;
    }
  }
  void resume() {
    if (paused_) {
      excluded_ += Clock::now() - paused_at_;
      paused_ = false;
    }
  }
  std::int64_t elapsed_ns() const {
    const auto now = paused_ ? paused_at_ : Clock::now();
    return std::chrono::duration_cast<std::chrono::nanoseconds>(now - start_ - excluded_).count();
  }
  double elapsed_s() const { return static_cast<double>(elapsed_ns()) * 1e-9; }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_;
  Clock::time_point paused_at_;
  Clock::duration excluded_{0};
  bool paused_ = false;
};

/// L and mu: declared by the objective, overridden by the config, or (for
/// backtracking) running estimates.
struct Constants {
  double L = 0.0;
  double mu = 0.0;
  bool adaptive = false;
};

inline Constants resolve_constants(const Objective& obj, const SolverConfig& cfg, bool need_mu) {
  Constants c;
  c.adaptive = cfg.step_rule == StepRule::backtracking;
  const std::optional<double> L = cfg.L ? cfg.L : obj.smoothness();
  const std::optional<double> mu = cfg.mu ? cfg.mu : obj.strong_convexity();
  if (c.adaptive) {
    // Only explicit overrides seed the estimates; otherwise they come from a
    // secant probe at the starting point.
    c.L = cfg.L.value_or(0.0);
    c.mu = cfg.mu.value_or(0.0);
    return c;
  }
  const bool need_L = cfg.step_rule == StepRule::short_step || cfg.step_rule == StepRule::constant ||
                      (need_mu && is_refined(cfg.solver));
  if (need_L && !(L && *L > 0.0)) {
    throw InvalidArgument("solver needs a smoothness constant L; supply one or use backtracking");
  }
  if ((need_mu || cfg.step_rule == StepRule::constant) && !(mu && *mu > 0.0)) {
    throw InvalidArgument("solver needs a strong convexity constant mu > 0; supply one or use backtracking");
  }
  c.L = L.value_or(0.0);
  c.mu = mu.value_or(0.0);
  return c;
}

/// Produces step sizes for one solver run, carrying backtracking estimates.
class Stepper {
 public:
  Stepper(const Objective& obj, const SolverConfig& cfg, Constants& constants, double constant_step,
          const SolverHooks& hooks)
      : obj_(obj), cfg_(cfg), c_(constants), constant_step_(constant_step), hooks_(hooks) {}

  /// Seeds missing backtracking estimates from a secant probe along dir.
  void seed(const Vec& x, const Vec& g, const Vec& dir) {
    if (!c_.adaptive) return;
    if (!(c_.L > 0.0)) c_.L = estimate_smoothness(obj_, x, g, dir);
    if (!(c_.mu > 0.0)) c_.mu = c_.L;
    c_.mu = std::min(c_.mu, c_.L);
  }

  double operator()(const Vec& x, double fx, const Vec& g, const Vec& dir, std::size_t k,
                    double max_step) {
    switch (cfg_.step_rule) {
      case StepRule::simple: return std::min(simple_step(k), max_step);
      case StepRule::line_search: return line_search(obj_, x, g, dir, max_step);
      case StepRule::short_step: return short_step(g.dot(dir), c_.L, dir.squaredNorm(), max_step);
      case StepRule::constant: return std::min(constant_step_, max_step);
      case StepRule::backtracking: {
        const BacktrackParams params{cfg_.tau1, cfg_.tau2, 60};
        const BacktrackResult r =
            backtracking_routine(obj_, x, fx, g, dir, c_.L, c_.mu, max_step, params);
        if (hooks_.on_backtrack) hooks_.on_backtrack({x, dir, fx, g.dot(dir), max_step, r});
        c_.L = r.L;
        // The secant refresh only lowers mu inside the loop, while the reset
        // raises it by 1/tau2 every call; keep it below the curvature estimate.
        c_.mu = std::min(r.mu, r.L);
        return r.step;
      }
    }
    return 0.0;
  }

 private:
  const Objective& obj_;
  const SolverConfig& cfg_;
  Constants& c_;
  double constant_step_;
  const SolverHooks& hooks_;
};

inline bool should_stop(const SolverConfig& cfg, double bound_gap, double fw_gap) {
  switch (cfg.effective_stop()) {
    case StopOn::bound_gap: return bound_gap <= cfg.tol;
    case StopOn::fw_gap: return fw_gap <= cfg.tol;
    case StopOn::either: return bound_gap <= cfg.tol || fw_gap <= cfg.tol;
  }
  return false;
}

/// Initial lower bound per the configured policy; lmo_bound is
/// f(x0) + <g, lmo(g) - x0>.
inline double initial_bound(const SolverConfig& cfg, double f0, double lmo_bound,
                            const std::optional<double>& fstar) {
  double B0 = lmo_bound;
  switch (cfg.b0_policy) {
    case BoundPolicy::lmo: break;
    case BoundPolicy::known_fstar:
      if (!fstar) throw InvalidArgument("B0 policy known_fstar needs an instance with known f*");
      B0 = *fstar;
      break;
    case BoundPolicy::value: B0 = cfg.b0_value; break;
  }
  if (B0 > f0 + 1e-12 * std::max(1.0, std::abs(f0))) {
    throw InvalidBound("initial lower bound exceeds f(x0)");
  }
  return std::min(B0, f0);
}

inline double radius_from_gap(double gap, double mu) {
  return std::max(std::sqrt(2.0 * std::max(gap, 0.0) / mu), kRadiusFloor);
}

inline ConvergenceTrace start_trace(const SolverConfig& cfg, std::size_t dim) {
  ConvergenceTrace t;
  t.solver = cfg.display_name();
  t.kind = cfg.solver;
  t.rule = cfg.step_rule;
  t.dim = dim;
  t.rho = cfg.rho;
  return t;
}

inline bool out_of_time(const SolverConfig& cfg, const Stopwatch& clock) {
  return cfg.time_limit > 0.0 && clock.elapsed_s() > cfg.time_limit;
}

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericalFailure(std::string(what) + " is not finite");
}

}  // namespace sfw::detail
