#include "sfw/step_size.hpp"

#include <algorithm>
#include <cmath>

namespace sfw {

double simple_step(std::size_t k) { return 2.0 / (static_cast<double>(k) + 1.0); }

double short_step(double slope, double L, double dir_sq_norm, double max_step) {
  if (!(slope < 0.0) || !(dir_sq_norm > 0.0)) return 0.0;
  if (!(L > 0.0)) return max_step;
  return std::clamp(-slope / (L * dir_sq_norm), 0.0, max_step);
}

double golden_section(const std::function<double(double)>& phi, double lo, double hi, double tol,
                      std::size_t max_evals) {
  if (!(hi > lo)) return lo;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = phi(c);
  double fd = phi(d);
  std::size_t evals = 2;
  while (b - a > tol && evals < max_evals) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = phi(d);
    }
    ++evals;
  }
  // The endpoints are candidates too; golden section only brackets interior minima.
  double best = fc <= fd ? c : d;
  double fbest = std::min(fc, fd);
  for (double t : {lo, hi}) {
    const double ft = phi(t);
    if (ft < fbest) {
      fbest = ft;
      best = t;
    }
  }
  return best;
}

double line_search(const Objective& obj, const Vec& x, const Vec& g, const Vec& dir,
                   double max_step) {
  if (auto t = obj.exact_line_search(x, g, dir, max_step)) return *t;
  Vec trial(x.size());
  return golden_section(
      [&](double t) {
        trial = x + t * dir;
        return obj.value(trial);
      },
      0.0, max_step);
}

BacktrackResult backtracking_routine(const Objective& obj, const Vec& x, double fx, const Vec& g,
                                     const Vec& dir, double L_prev, double mu_prev,
                                     double max_step, const BacktrackParams& params) {
  if (!(params.tau1 > 1.0) || !(params.tau2 > 0.0 && params.tau2 <= 1.0)) {
    throw InvalidArgument("backtracking: need tau1 > 1 and 0 < tau2 <= 1");
  }
  if (!(L_prev > 0.0) || !(mu_prev > 0.0)) {
    throw InvalidArgument("backtracking: estimates must be positive");
  }
  const double slope = g.dot(dir);
  const double sq = dir.squaredNorm();
  BacktrackResult r;
  r.L = L_prev;
  r.mu = mu_prev;
  r.f_trial = fx;
  if (!(slope < 0.0) || !(sq > 0.0)) {
    r.descent = false;
    return r;
  }

  double L = params.tau2 * L_prev;
  double mu = mu_prev / params.tau2;
  auto step_for = [&](double Lc) { return std::min(-slope / (Lc * sq), max_step); };
  double delta = step_for(L);
  Vec trial = x + delta * dir;
  double ft = obj.value(trial);
  std::size_t evals = 1;
  while (ft > fx + delta * slope + 0.5 * delta * delta * L * sq) {
    if (evals > params.max_loops) throw NumericalFailure("backtracking: loop cap exceeded");
    L *= params.tau1;
    mu = std::min(2.0 * (ft - fx - delta * slope) / (delta * delta * sq), mu);
    delta = step_for(L);
    trial = x + delta * dir;
    ft = obj.value(trial);
    ++evals;
  }
  r.step = delta;
  r.L = L;
  r.mu = mu;
  r.f_trial = ft;
  r.evaluations = evals;
  return r;
}

double estimate_smoothness(const Objective& obj, const Vec& x, const Vec& g, const Vec& dir) {
  const double norm = dir.norm();
  if (!(norm > 0.0)) return 1.0;
  const double eps = 1e-3;
  const Vec gp = obj.gradient(x + (eps / norm) * dir);
  const double est = (gp - g).norm() / eps;
  return est > 0.0 && std::isfinite(est) ? est : 1.0;
}

}  // namespace sfw
