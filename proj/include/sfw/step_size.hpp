#pragma once

#include <cstddef>
#include <functional>

#include "sfw/objective.hpp"
#include "sfw/types.hpp"

namespace sfw {

/// 2 / (k + 1)
double simple_step(std::size_t k);

/// min{max_step, <-g, dir> / (L ||dir||^2)}, clipped at 0. slope = <g, dir>.
double short_step(double slope, double L, double dir_sq_norm, double max_step = 1.0);

/// Minimizer of a unimodal phi on [lo, hi] by golden-section search.
double golden_section(const std::function<double(double)>& phi, double lo, double hi,
                      double tol = 1e-10, std::size_t max_evals = 100);

/// argmin_{t in [0, max_step]} f(x + t dir): closed form when the objective
/// provides it, golden section otherwise.
double line_search(const Objective& obj, const Vec& x, const Vec& g, const Vec& dir,
                   double max_step = 1.0);

struct BacktrackParams {
  double tau1 = 2.0;
  double tau2 = 0.9;
  std::size_t max_loops = 60;
};

/// The values that entered the final sufficient-decrease test.
struct BacktrackResult {
  double step = 0.0;
  double L = 0.0;
  double mu = 0.0;
  double f_trial = 0.0;
  std::size_t evaluations = 0;
  bool descent = true;
};

/// Adaptive step with local estimates of L and mu. fx and g are f(x) and its
/// gradient. Non-descent directions return step 0 with the estimates unchanged.
BacktrackResult backtracking_routine(const Objective& obj, const Vec& x, double fx, const Vec& g,
                                     const Vec& dir, double L_prev, double mu_prev,
                                     double max_step, const BacktrackParams& params = {});

/// Initial curvature guess from a gradient secant along dir.
double estimate_smoothness(const Objective& obj, const Vec& x, const Vec& g, const Vec& dir);

}  // namespace sfw
