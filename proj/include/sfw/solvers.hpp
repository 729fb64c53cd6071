#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "sfw/active_set.hpp"
#include "sfw/objective.hpp"
#include "sfw/polytope.hpp"
#include "sfw/problems.hpp"
#include "sfw/simplex_ball.hpp"
#include "sfw/solver_config.hpp"
#include "sfw/step_size.hpp"
#include "sfw/trace.hpp"

namespace sfw {

/// Inputs and outcome of one backtracking call, for auditing.
struct BacktrackEvent {
  Vec x;
  Vec dir;
  double fx = 0.0;
  double slope = 0.0;
  double max_step = 0.0;
  BacktrackResult result;
};

/// Optional observers; solvers call them synchronously and never depend on
/// their side effects.
struct SolverHooks {
  /// After every iterate update, inner steps included.
  std::function<void(const Vec& x)> on_iterate;
  /// Refined simplex solver: after each outer iteration, with the new
  /// restricted ball S(x̂_k, d̂_k).
  std::function<void(std::size_t k, const Vec& x, const SimplexBall& hat)> on_outer;
  /// Active-set solvers: reconstruction error and weight sum after each step.
  std::function<void(double reconstruction_error, double weight_sum)> on_active_set;
  std::function<void(const BacktrackEvent&)> on_backtrack;
};

struct SolveOptions {
  std::optional<double> known_fstar;
  SolverHooks hooks;
};

struct SolveResult {
  Vec x;
  ConvergenceTrace trace;
};

SolveResult solve_fw(const Objective& obj, const PolytopeModel& P, const Vec& x0,
                     const SolverConfig& cfg, const SolveOptions& opts = {});
SolveResult solve_afw(const Objective& obj, const PolytopeModel& P, const Vec& x0,
                      const SolverConfig& cfg, const SolveOptions& opts = {});
SolveResult solve_pfw(const Objective& obj, const PolytopeModel& P, const Vec& x0,
                      const SolverConfig& cfg, const SolveOptions& opts = {});

/// Simplex Frank-Wolfe over S_n.
SolveResult solve_sfw(const Objective& obj, const Vec& x0, const SolverConfig& cfg,
                       const SolveOptions& opts = {});
/// Refined simplex Frank-Wolfe over S_n; always starts at the barycenter.
SolveResult solve_rsfw(const Objective& obj, std::size_t n, const SolverConfig& cfg,
                       const SolveOptions& opts = {});

SolveResult solve_sfw_p(const Objective& obj, const PolytopeModel& P, const Vec& x0,
                        const SolverConfig& cfg, const SolveOptions& opts = {});
SolveResult solve_rsfw_p(const Objective& obj, const PolytopeModel& P, const Vec& x0,
                         const SolverConfig& cfg, const SolveOptions& opts = {});

/// Dispatches on cfg.solver; fills known_fstar from the instance.
SolveResult solve(const ProblemInstance& inst, const SolverConfig& cfg, SolverHooks hooks = {});

}  // namespace sfw
