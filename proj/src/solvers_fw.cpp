#include <algorithm>
#include <limits>

#include "solver_common.hpp"

namespace sfw {

namespace {

using detail::Stopwatch;

void check_start(const PolytopeModel& P, const Vec& x0) {
  require_same_dim(static_cast<std::size_t>(x0.size()), P.dim(), "solver start point");
  if (!P.contains(x0, detail::kIterateTol)) throw InfeasiblePoint("starting point outside the polytope");
}

enum class Variant { plain, away, pairwise };

// FW, AFW and PFW share everything except the choice of direction.
SolveResult run_fw(Variant variant, const Objective& obj, const PolytopeModel& P, const Vec& x0,
                   const SolverConfig& cfg, const SolveOptions& opts) {
  validate(cfg, P.kind());
  require_same_dim(obj.dim(), P.dim(), "objective/polytope");
  check_start(P, x0);
  detail::Constants constants = detail::resolve_constants(obj, cfg, false);
  detail::Stepper step(obj, cfg, constants, 0.0, opts.hooks);

  std::optional<ActiveSet> active;
  Vec x = x0;
  if (variant != Variant::plain) {
    active = ActiveSet::from_rep(P.caratheodory(x0, detail::kIterateTol));
    x = active->point();
  }

  Stopwatch clock;
  Vec g;
  double f = obj.value_and_gradient(x, g);
  Vec s;
  P.lmo(g, s);
  double gap = g.dot(x - s);

  ConvergenceTrace trace = detail::start_trace(cfg, P.dim());
  trace.f0 = f;
  trace.gap0 = gap;
  trace.B0 = detail::initial_bound(cfg, f, f - gap, opts.known_fstar);
  trace.d0 = std::numeric_limits<double>::quiet_NaN();
  trace.eta = P.geometry().eta;
  trace.diameter = P.geometry().diameter;
  double B = trace.B0;
  step.seed(x, g, s - x);

  std::size_t lmo_calls = 0;
  Vec dir(x.size());
  for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
    ++lmo_calls;
    double max_step = 1.0;
    std::size_t away = 0;
    enum class Move { fw, away, pairwise } move = Move::fw;
    if (variant == Variant::plain) {
      dir = s - x;
    } else {
      away = active->away_index(g);
      const Vec& v = active->vertex(away);
      const double alpha = active->weight(away);
      if (variant == Variant::pairwise) {
        move = Move::pairwise;
        dir = s - v;
        max_step = alpha;
      } else if (g.dot(x - s) >= g.dot(v - x) || alpha >= 1.0) {
        dir = s - x;
      } else {
        move = Move::away;
        dir = x - v;
        max_step = alpha / (1.0 - alpha);
      }
    }

    const double t = std::clamp(step(x, f, g, dir, k, max_step), 0.0, max_step);
    x += t * dir;
    if (active) {
      switch (move) {
        case Move::fw: active->fw_step(s, t); break;
        case Move::away: active->away_step(away, t); break;
        case Move::pairwise: active->pairwise_step(s, away, t); break;
      }
      const Vec rebuilt = active->point();
      if (opts.hooks.on_active_set) {
        opts.hooks.on_active_set((rebuilt - x).norm(), active->weight_sum());
      }
      x = rebuilt;
    }
    if (opts.hooks.on_iterate) opts.hooks.on_iterate(x);

    f = obj.value_and_gradient(x, g);
    detail::require_finite(f, "objective");
    P.lmo(g, s);
    gap = g.dot(x - s);
    B = std::max(B, f - gap);
    if (cfg.inject_known_fstar && opts.known_fstar) B = std::max(B, *opts.known_fstar);

    trace.rows.push_back({k, f, gap, B, std::numeric_limits<double>::quiet_NaN(),
                          clock.elapsed_ns(), lmo_calls, 0, 0});
    if (detail::should_stop(cfg, f - B, gap)) {
      trace.converged = true;
      trace.status = "converged";
      break;
    }
    if (detail::out_of_time(cfg, clock)) {
      trace.status = "time_limit";
      break;
    }
  }
  trace.L = constants.L;
  trace.mu = constants.mu;
  return {std::move(x), std::move(trace)};
}

}  // namespace

SolveResult solve_fw(const Objective& obj, const PolytopeModel& P, const Vec& x0,
                     const SolverConfig& cfg, const SolveOptions& opts) {
  return run_fw(Variant::plain, obj, P, x0, cfg, opts);
}

SolveResult solve_afw(const Objective& obj, const PolytopeModel& P, const Vec& x0,
                      const SolverConfig& cfg, const SolveOptions& opts) {
  return run_fw(Variant::away, obj, P, x0, cfg, opts);
}

SolveResult solve_pfw(const Objective& obj, const PolytopeModel& P, const Vec& x0,
                      const SolverConfig& cfg, const SolveOptions& opts) {
  return run_fw(Variant::pairwise, obj, P, x0, cfg, opts);
}

}  // namespace sfw
