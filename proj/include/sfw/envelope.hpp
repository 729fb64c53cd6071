#pragma once

// Theoretical upper bounds on f(x_k) - B_k for the SFW family, evaluated
// pointwise against traces.

#include <cstddef>
#include <optional>

#include "sfw/trace.hpp"

namespace sfw {

/// (f0 - B0) exp(-mu k / (4 L n^2))
double sfw_envelope(double initial_gap, double mu, double L, std::size_t n, std::size_t k);
/// mu / (2 n^2 rho^(2k))
double rsfw_envelope(double mu, std::size_t n, double rho, std::size_t k);
/// (f0 - B0) exp(-mu k / (4 L eta^2 (n+1)^2))
double sfw_p_envelope(double initial_gap, double mu, double L, double eta, std::size_t n,
                      std::size_t k);
/// (f0 - B0) rho^(-2k)
double rsfw_p_envelope(double initial_gap, double rho, std::size_t k);

/// Envelope value for row k of a trace, from the metadata the solver stored.
/// Empty for solvers or step rules without a linear-rate guarantee.
std::optional<double> envelope_at(const ConvergenceTrace& trace, std::size_t k);

/// True when bound_gap <= envelope up to floating-point slack.
bool within_envelope(double bound_gap, double envelope, double f);

/// Rows whose f - B exceeds the envelope.
std::size_t count_envelope_violations(const ConvergenceTrace& trace);

}  // namespace sfw
