#include <algorithm>
#include <cmath>
#include <limits>

#include "sfw/oracles.hpp"
#include "solver_common.hpp"

namespace sfw {

namespace {

using detail::Stopwatch;

struct Geometry {
  double D = 0.0;
  double eta = 0.0;
};

Geometry resolve_geometry(const PolytopeModel& P, const SolverConfig& cfg) {
  return {P.geometry().diameter, cfg.eta.value_or(P.geometry().eta)};
}

void check_start(const PolytopeModel& P, const Vec& x0) {
  require_same_dim(static_cast<std::size_t>(x0.size()), P.dim(), "solver start point");
  if (!P.contains(x0, detail::kIterateTol)) throw InfeasiblePoint("starting point outside the polytope");
}

// FW gap at x; instrumentation only.
double fw_gap(const PolytopeModel& P, const Vec& g, const Vec& x, Vec& scratch) {
  P.lmo(g, scratch);
  return g.dot(x - scratch);
}

}  // namespace

SolveResult solve_sfw_p(const Objective& obj, const PolytopeModel& P, const Vec& x0,
                        const SolverConfig& cfg, const SolveOptions& opts) {
  validate(cfg, P.kind());
  if (cfg.solver != SolverKind::sfw_p) throw InvalidArgument("solve_sfw_p: config is not for sfw_p");
  require_same_dim(obj.dim(), P.dim(), "objective/polytope");
  check_start(P, x0);
  const Geometry geo = resolve_geometry(P, cfg);
  const double n1 = static_cast<double>(P.dim()) + 1.0;
  detail::Constants constants = detail::resolve_constants(obj, cfg, true);
  const double constant_step =
      constants.adaptive
          ? 0.0
          : std::min(1.0, constants.mu / (2.0 * constants.L * n1 * n1 * geo.eta * geo.eta));
  detail::Stepper step(obj, cfg, constants, constant_step, opts.hooks);

  Stopwatch clock;
  Vec x = x0;
  Vec g;
  Vec v;
  Vec y;
  Vec scratch;
  double f = obj.value_and_gradient(x, g);
  const double gap0 = fw_gap(P, g, x, v);

  ConvergenceTrace trace = detail::start_trace(cfg, P.dim());
  trace.f0 = f;
  trace.gap0 = gap0;
  trace.B0 = detail::initial_bound(cfg, f, f - gap0, opts.known_fstar);
  trace.eta = geo.eta;
  trace.diameter = geo.D;
  step.seed(x, g, v - x);
  double B = trace.B0;
  double d = detail::radius_from_gap(f - B, constants.mu);
  trace.d0 = d;
  CaratheodoryRep rep = P.caratheodory(x, detail::kIterateTol);

  std::size_t lmo_calls = 0;
  Vec dir(x.size());
  for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
    const PolytopeRestrictedBall rb = slmo_p_prepare(rep, std::max(geo.eta / geo.D * d, detail::kRadiusFloor));
    slmo_p_solve(rb, P, g, y, v);
    ++trace.prepares;
    ++lmo_calls;

    const double working = constants.adaptive ? f + g.dot(v - x) : f + g.dot(y - x);
    B = std::max(B, working);
    if (cfg.inject_known_fstar && opts.known_fstar) B = std::max(B, *opts.known_fstar);

    dir = y - x;
    const double t = std::clamp(step(x, f, g, dir, k, 1.0), 0.0, 1.0);
    x += t * dir;
    if (opts.hooks.on_iterate) opts.hooks.on_iterate(x);
    f = obj.value_and_gradient(x, g);
    detail::require_finite(f, "objective");
    d = detail::radius_from_gap(f - B, constants.mu);
    rep = P.caratheodory(x, detail::kIterateTol);

    clock.pause();
    const double gap = fw_gap(P, g, x, scratch);
    clock.resume();
    trace.rows.push_back({k, f, gap, B, d, clock.elapsed_ns(), lmo_calls, lmo_calls, 1});
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

SolveResult solve_rsfw_p(const Objective& obj, const PolytopeModel& P, const Vec& x0,
                         const SolverConfig& cfg, const SolveOptions& opts) {
  validate(cfg, P.kind());
  if (cfg.solver != SolverKind::rsfw_p) throw InvalidArgument("solve_rsfw_p: config is not for rsfw_p");
  require_same_dim(obj.dim(), P.dim(), "objective/polytope");
  check_start(P, x0);
  const Geometry geo = resolve_geometry(P, cfg);
  const double n1 = static_cast<double>(P.dim()) + 1.0;
  detail::Constants constants = detail::resolve_constants(obj, cfg, true);
  const double constant_step =
      constants.adaptive
          ? 0.0
          : std::min(1.0, constants.mu / (2.0 * constants.L * n1 * n1 * geo.eta * geo.eta));
  detail::Stepper step(obj, cfg, constants, constant_step, opts.hooks);

  Stopwatch clock;
  Vec x = x0;
  Vec g;
  Vec v;
  Vec y;
  Vec scratch;
  double f = obj.value_and_gradient(x, g);
  const double gap0 = fw_gap(P, g, x, v);

  ConvergenceTrace trace = detail::start_trace(cfg, P.dim());
  trace.f0 = f;
  trace.gap0 = gap0;
  trace.B0 = detail::initial_bound(cfg, f, f - gap0, opts.known_fstar);
  trace.eta = geo.eta;
  trace.diameter = geo.D;
  step.seed(x, g, v - x);
  double B = trace.B0;
  double d = std::max(geo.eta / geo.D * std::sqrt(2.0 * (f - B) / constants.mu), detail::kRadiusFloor);
  trace.d0 = d;
  CaratheodoryRep rep = P.caratheodory(x, detail::kIterateTol);

  const std::size_t cap = cfg.inner_cap > 0 ? cfg.inner_cap : 10 * P.dim();
  std::size_t j_start = 1;
  std::size_t lmo_calls = 0;
  Vec p(x.size());
  Vec dir(x.size());
  for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
    const PolytopeRestrictedBall rb = slmo_p_prepare(rep, d);
    ++trace.prepares;
    const double J =
        std::ceil(4.0 * cfg.rho * cfg.rho * n1 * n1 * geo.eta * geo.eta * constants.L / constants.mu);
    const auto budget = static_cast<std::size_t>(std::min<double>(static_cast<double>(cap), J));
    const double threshold =
        constants.mu * d * d * geo.D * geo.D / (2.0 * cfg.rho * cfg.rho * geo.eta * geo.eta);

    p = x;
    double fp = f;
    double C = B;
    bool broke = false;
    std::size_t inner = 0;
    for (std::size_t j = j_start; inner < std::max<std::size_t>(budget, 1); ++j) {
      if (inner % 1024 == 1023 && detail::out_of_time(cfg, clock)) break;
      slmo_p_solve(rb, P, g, y, v);
      ++lmo_calls;
      ++inner;
      const double working = constants.adaptive ? fp + g.dot(v - p) : fp + g.dot(y - p);
      C = std::max(C, working);
      if (cfg.inject_known_fstar && opts.known_fstar) C = std::max(C, *opts.known_fstar);
      if (fp - C <= threshold) {
        broke = true;
        break;
      }
      dir = y - p;
      const double t = std::clamp(step(p, fp, g, dir, j, 1.0), 0.0, 1.0);
      p += t * dir;
      if (opts.hooks.on_iterate) opts.hooks.on_iterate(p);
      fp = obj.value_and_gradient(p, g);
      detail::require_finite(fp, "objective");
    }

    x = p;
    f = fp;
    B = C;
    const double d_prev = d;
    // A capped inner loop proves no contraction; keep the radius that is known
    // to enclose the optimum.
    if (broke) d = std::max(d / cfg.rho, detail::kRadiusFloor);
    rep = P.caratheodory(x, detail::kIterateTol);
    trace.cap_hit.push_back(broke ? 0 : 1);

    switch (cfg.warm_start) {
      case WarmStart::off: j_start = 1; break;
      case WarmStart::halving:
        j_start = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(static_cast<double>(inner) / cfg.rho_prime)));
        break;
      case WarmStart::ratio:
        j_start = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(std::sqrt(d / d_prev) * static_cast<double>(inner))));
        break;
    }

    clock.pause();
    const double gap = fw_gap(P, g, x, scratch);
    clock.resume();
    trace.rows.push_back({k, f, gap, B, d, clock.elapsed_ns(), lmo_calls, lmo_calls, inner});
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

SolveResult solve(const ProblemInstance& inst, const SolverConfig& cfg, SolverHooks hooks) {
  if (!inst.objective || !inst.polytope) throw InvalidArgument("solve: incomplete instance");
  SolveOptions opts{inst.known_fstar, std::move(hooks)};
  const Objective& obj = *inst.objective;
  const PolytopeModel& P = *inst.polytope;
  switch (cfg.solver) {
    case SolverKind::fw: return solve_fw(obj, P, inst.x0, cfg, opts);
    case SolverKind::afw: return solve_afw(obj, P, inst.x0, cfg, opts);
    case SolverKind::pfw: return solve_pfw(obj, P, inst.x0, cfg, opts);
    case SolverKind::sfw:
      validate(cfg, P.kind());
      return solve_sfw(obj, inst.x0, cfg, opts);
    case SolverKind::rsfw:
      validate(cfg, P.kind());
      return solve_rsfw(obj, P.dim(), cfg, opts);
    case SolverKind::sfw_p: return solve_sfw_p(obj, P, inst.x0, cfg, opts);
    case SolverKind::rsfw_p: return solve_rsfw_p(obj, P, inst.x0, cfg, opts);
  }
  throw InvalidArgument("solve: unknown solver");
}

}  // namespace sfw
