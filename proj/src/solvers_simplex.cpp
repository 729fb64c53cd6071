#include <algorithm>
#include <cmath>
#include <limits>

#include "sfw/oracles.hpp"
#include "solver_common.hpp"

namespace sfw {

namespace {

using detail::Stopwatch;

// FW gap over the simplex: <g, x> - min g.
double simplex_fw_gap(const Vec& g, const Vec& x) { return g.dot(x) - g.minCoeff(); }

void check_simplex_start(const Vec& x0) {
  if (x0.size() == 0) throw InvalidArgument("empty starting point");
  if (std::abs(x0.sum() - 1.0) > detail::kIterateTol || x0.minCoeff() < -detail::kIterateTol) {
    throw InfeasiblePoint("starting point outside the unit simplex");
  }
}

}  // namespace

SolveResult solve_sfw(const Objective& obj, const Vec& x0, const SolverConfig& cfg,
                      const SolveOptions& opts) {
  validate(cfg, PolytopeKind::simplex);
  if (cfg.solver != SolverKind::sfw) throw InvalidArgument("solve_sfw: config is not for sfw");
  require_same_dim(obj.dim(), static_cast<std::size_t>(x0.size()), "objective/start point");
  check_simplex_start(x0);
  const auto n = static_cast<double>(x0.size());
  detail::Constants constants = detail::resolve_constants(obj, cfg, true);
  const double constant_step =
      constants.adaptive ? 0.0 : std::min(1.0, constants.mu / (2.0 * constants.L * n * n));
  detail::Stepper step(obj, cfg, constants, constant_step, opts.hooks);

  Stopwatch clock;
  Vec x = x0;
  Vec g;
  double f = obj.value_and_gradient(x, g);
  const double gap0 = simplex_fw_gap(g, x);

  ConvergenceTrace trace = detail::start_trace(cfg, static_cast<std::size_t>(x.size()));
  trace.f0 = f;
  trace.gap0 = gap0;
  trace.B0 = detail::initial_bound(cfg, f, f - gap0, opts.known_fstar);
  trace.eta = std::sqrt(2.0);
  trace.diameter = std::sqrt(2.0);
  {
    Vec e = Vec::Zero(x.size());
    Eigen::Index i = 0;
    g.minCoeff(&i);
    e(i) = 1.0;
    step.seed(x, g, e - x);
  }
  double B = trace.B0;
  double d = detail::radius_from_gap(f - B, constants.mu);
  trace.d0 = d;

  Vec y(x.size());
  Vec dir(x.size());
  SimplexRestrictedBall rb = slmo_prepare(x, d, detail::kIterateTol);
  for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
    if (k > 1) slmo_prepare(x, d, rb, detail::kIterateTol);
    const BallVertexIndex vi = slmo_solve(rb, g, y);
    ++trace.prepares;

    // With estimated constants the restricted minimizer need not bound f*;
    // the vertex it selects is also the simplex LMO answer, which always does.
    const double working = constants.adaptive
                               ? f + g(static_cast<Eigen::Index>(vi.index)) - g.dot(x)
                               : f + g.dot(y - x);
    B = std::max(B, working);
    if (cfg.inject_known_fstar && opts.known_fstar) B = std::max(B, *opts.known_fstar);

    dir = y - x;
    const double t = std::clamp(step(x, f, g, dir, k, 1.0), 0.0, 1.0);
    x += t * dir;
    if (opts.hooks.on_iterate) opts.hooks.on_iterate(x);
    f = obj.value_and_gradient(x, g);
    detail::require_finite(f, "objective");
    d = detail::radius_from_gap(f - B, constants.mu);

    clock.pause();
    const double gap = simplex_fw_gap(g, x);
    clock.resume();
    trace.rows.push_back({k, f, gap, B, d, clock.elapsed_ns(), 0, k, 1});
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

namespace {

// Barycentric coordinates of p in the restricted ball, cleaned of rounding.
Vec ball_weights(const SimplexRestrictedBall& rb, const Vec& p, double drop) {
  Vec lambda = (p - rb.lower()) / rb.vertex_step();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) <= drop) lambda(i) = 0.0;
  }
  const double total = lambda.sum();
  if (!(total > 0.0)) throw NumericalFailure("rsfw: iterate left its restricted ball");
  return lambda / total;
}

}  // namespace

SolveResult solve_rsfw(const Objective& obj, std::size_t n, const SolverConfig& cfg,
                       const SolveOptions& opts) {
  validate(cfg, PolytopeKind::simplex);
  if (cfg.solver != SolverKind::rsfw) throw InvalidArgument("solve_rsfw: config is not for rsfw");
  if (n == 0) throw InvalidArgument("solve_rsfw: dimension must be positive");
  require_same_dim(obj.dim(), n, "objective/dimension");
  const auto nn = static_cast<double>(n);
  detail::Constants constants = detail::resolve_constants(obj, cfg, true);
  const double constant_step =
      constants.adaptive ? 0.0 : std::min(1.0, constants.mu / (2.0 * constants.L * nn * nn));
  detail::Stepper step(obj, cfg, constants, constant_step, opts.hooks);
  constexpr double kDrop = 1e-12;

  Stopwatch clock;
  Vec x = Vec::Constant(static_cast<Eigen::Index>(n), 1.0 / nn);
  Vec g;
  double f = obj.value_and_gradient(x, g);
  const double gap0 = simplex_fw_gap(g, x);

  ConvergenceTrace trace = detail::start_trace(cfg, n);
  trace.f0 = f;
  trace.gap0 = gap0;
  trace.B0 = detail::initial_bound(cfg, f, f - gap0, opts.known_fstar);
  trace.d0 = 1.0 / nn;
  trace.eta = std::sqrt(2.0);
  trace.diameter = std::sqrt(2.0);
  {
    Vec e = Vec::Zero(x.size());
    Eigen::Index i = 0;
    g.minCoeff(&i);
    e(i) = 1.0;
    step.seed(x, g, e - x);
  }
  double B = trace.B0;

  const std::size_t cap = cfg.inner_cap > 0 ? cfg.inner_cap : 10 * n;
  // S(x0, 1/n) is the unit simplex itself, so bar and hat start equal.
  SimplexBall bar = unit_simplex_ball(n);
  SimplexBall hat = bar;
  double prev_bar_radius = bar.radius();
  std::size_t j_start = 1;
  std::size_t slmo2_calls = 0;

  Vec p(x.size());
  Vec y(x.size());
  Vec dir(x.size());
  for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
    const SimplexRestrictedBall rb(hat);
    ++trace.prepares;
    const double d_hat = hat.radius();
    const double J = std::ceil(8.0 * cfg.rho * cfg.rho * nn * nn * constants.L / constants.mu);
    const auto budget = static_cast<std::size_t>(std::min<double>(static_cast<double>(cap), J));

    p = x;
    double fp = f;
    double C = B;
    Vec lambda;
    if (cfg.accel != Accel::none) lambda = ball_weights(rb, p, kDrop);

    bool broke = false;
    std::size_t inner = 0;
    for (std::size_t j = j_start; inner < std::max<std::size_t>(budget, 1); ++j) {
      if (inner % 1024 == 1023 && detail::out_of_time(cfg, clock)) break;
      const BallVertexIndex vi = slmo_solve(rb, g, y);
      const auto istar = static_cast<Eigen::Index>(vi.index);
      ++slmo2_calls;
      ++inner;
      const double working = constants.adaptive ? fp + g(istar) - g.dot(p) : fp + g.dot(y - p);
      C = std::max(C, working);
      if (cfg.inject_known_fstar && opts.known_fstar) C = std::max(C, *opts.known_fstar);
      // The test uses p_{j-1}, the point C_j was built from.
      if (fp - C <= constants.mu * d_hat * d_hat / (2.0 * cfg.rho * cfg.rho)) {
        broke = true;
        break;
      }

      if (cfg.accel == Accel::none) {
        dir = y - p;
        const double t = std::clamp(step(p, fp, g, dir, j, 1.0), 0.0, 1.0);
        p += t * dir;
      } else {
        // Away vertex: the active ball vertex with the largest gradient entry.
        Eigen::Index a = -1;
        for (Eigen::Index i = 0; i < lambda.size(); ++i) {
          if (lambda(i) > 0.0 && (a < 0 || g(i) > g(a))) a = i;
        }
        const double alpha = lambda(a);
        Vec v = rb.lower();
        v(a) += rb.vertex_step();
        enum class Move { fw, away, pairwise } move = Move::fw;
        if (cfg.accel == Accel::pairwise) {
          move = Move::pairwise;
          dir = alpha * (y - v);
        } else {
          const double delta = g.dot(p - y) - g.dot(v - p);
          if (delta < 0.0 && alpha < 1.0) {
            move = Move::away;
            dir = (alpha / (1.0 - alpha)) * (p - v);
          } else {
            dir = y - p;
          }
        }
        const double t = std::clamp(step(p, fp, g, dir, j, 1.0), 0.0, 1.0);
        p += t * dir;
        switch (move) {
          case Move::fw:
            lambda *= 1.0 - t;
            lambda(istar) += t;
            break;
          case Move::away: {
            const double gamma = t * alpha / (1.0 - alpha);
            lambda *= 1.0 + gamma;
            lambda(a) -= gamma;
            break;
          }
          case Move::pairwise:
            lambda(a) -= t * alpha;
            lambda(istar) += t * alpha;
            break;
        }
        for (Eigen::Index i = 0; i < lambda.size(); ++i) {
          if (lambda(i) <= kDrop) lambda(i) = 0.0;
        }
        lambda /= lambda.sum();
        const Vec rebuilt = rb.lower() + rb.vertex_step() * lambda;
        if (opts.hooks.on_active_set) {
          opts.hooks.on_active_set((rebuilt - p).norm(), lambda.sum());
        }
        p = rebuilt;
      }
      if (opts.hooks.on_iterate) opts.hooks.on_iterate(p);
      fp = obj.value_and_gradient(p, g);
      detail::require_finite(fp, "objective");
    }

    x = p;
    f = fp;
    B = C;
    // Without the break the iterate has only moved downhill, so the current
    // radius still encloses the optimum; shrinking it could cut the optimum off.
    const double d = broke ? std::max(d_hat / cfg.rho, detail::kRadiusFloor) : d_hat;
    trace.cap_hit.push_back(broke ? 0 : 1);

    const SimplexBall current(x, d);
    try {
      bar = intersect(current, hat, 0.0);
      hat = intersect(bar, unit_simplex_ball(n), 0.0);
    } catch (const EmptyIntersection&) {
      // Rounding can empty the intersection once radii approach machine
      // precision; restart from the ball around the iterate.
      bar = current;
      hat = intersect_with_unit_simplex(current, detail::kIterateTol);
    }
    if (opts.hooks.on_outer) opts.hooks.on_outer(k, x, hat);

    switch (cfg.warm_start) {
      case WarmStart::off: j_start = 1; break;
      case WarmStart::halving:
        j_start = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(static_cast<double>(inner) / cfg.rho_prime)));
        break;
      case WarmStart::ratio:
        j_start = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(std::sqrt(bar.radius() / prev_bar_radius) *
                                                   static_cast<double>(inner))));
        break;
    }
    prev_bar_radius = bar.radius();

    clock.pause();
    const double gap = simplex_fw_gap(g, x);
    clock.resume();
    trace.rows.push_back({k, f, gap, B, d, clock.elapsed_ns(), 0, slmo2_calls, inner});
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

}  // namespace sfw
