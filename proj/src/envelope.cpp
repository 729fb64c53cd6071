#include "sfw/envelope.hpp"

#include <algorithm>
#include <cmath>

namespace sfw {

double sfw_envelope(double initial_gap, double mu, double L, std::size_t n, std::size_t k) {
  const double nn = static_cast<double>(n);
  return initial_gap * std::exp(-mu * static_cast<double>(k) / (4.0 * L * nn * nn));
}

double rsfw_envelope(double mu, std::size_t n, double rho, std::size_t k) {
  const double nn = static_cast<double>(n);
  return mu / (2.0 * nn * nn) * std::pow(rho, -2.0 * static_cast<double>(k));
}

double sfw_p_envelope(double initial_gap, double mu, double L, double eta, std::size_t n,
                      std::size_t k) {
  const double n1 = static_cast<double>(n) + 1.0;
  return initial_gap * std::exp(-mu * static_cast<double>(k) / (4.0 * L * eta * eta * n1 * n1));
}

double rsfw_p_envelope(double initial_gap, double rho, std::size_t k) {
  return initial_gap * std::pow(rho, -2.0 * static_cast<double>(k));
}

std::optional<double> envelope_at(const ConvergenceTrace& t, std::size_t k) {
  // The guarantees cover line search, the short step and the constant step
  // (and, for the refined solvers, the simple step), all with known constants.
  const bool refined = t.kind == SolverKind::rsfw || t.kind == SolverKind::rsfw_p;
  switch (t.rule) {
    case StepRule::line_search:
    case StepRule::short_step:
    case StepRule::constant: break;
    case StepRule::simple:
      if (!refined) return std::nullopt;
      break;
    case StepRule::backtracking: return std::nullopt;
  }
  if (!(t.mu > 0.0) || !(t.L > 0.0)) return std::nullopt;
  const double initial_gap = t.f0 - t.B0;
  switch (t.kind) {
    case SolverKind::sfw: return sfw_envelope(initial_gap, t.mu, t.L, t.dim, k);
    case SolverKind::rsfw: return rsfw_envelope(t.mu, t.dim, t.rho, k);
    case SolverKind::sfw_p: return sfw_p_envelope(initial_gap, t.mu, t.L, t.eta, t.dim, k);
    case SolverKind::rsfw_p: return rsfw_p_envelope(initial_gap, t.rho, k);
    default: return std::nullopt;
  }
}

bool within_envelope(double bound_gap, double envelope, double f) {
  const double slack = 1e-9 * envelope + 1e-14 * std::max(1.0, std::abs(f));
  return bound_gap <= envelope + slack;
}

std::size_t count_envelope_violations(const ConvergenceTrace& trace) {
  std::size_t violations = 0;
  for (const TraceRow& r : trace.rows) {
    const auto env = envelope_at(trace, r.k);
    if (env && !within_envelope(r.f - r.B, *env, r.f)) ++violations;
  }
  return violations;
}

}  // namespace sfw
