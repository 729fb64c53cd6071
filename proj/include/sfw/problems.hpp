#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "sfw/flow_network.hpp"
#include "sfw/objective.hpp"
#include "sfw/polytope.hpp"
#include "sfw/types.hpp"

namespace sfw {

struct ProblemInstance {
  std::string family;
  std::shared_ptr<const Objective> objective;
  std::shared_ptr<const PolytopeModel> polytope;
  Vec x0;
  std::optional<double> known_fstar;
  /// Minimizer planted by the generator, when there is one.
  std::optional<Vec> planted;
  std::uint64_t seed = 0;
};

/// min ||Ax - b||^2 over the unit simplex. A is Gaussian; the planted x* is
/// nonnegative with each entry kept with probability density, normalized to
/// sum 1, and b = A x*. Starts at the barycenter.
ProblemInstance gen_simplex_least_squares(std::size_t m, std::size_t n, double density,
                                          std::uint64_t seed);

/// min ||Ax - b||^2 over the unit l1-ball with a planted Gaussian x* on the
/// boundary (||x*||_1 = 1). sparsity is the fraction of nonzeros kept.
/// Starts at 0.
ProblemInstance gen_l1_least_squares(std::size_t m, std::size_t n, double sparsity,
                                     std::uint64_t seed,
                                     std::optional<double> eta = std::nullopt);

/// min ||Ax - b||^2 over [0, 1]^n with x* uniform in the cube and about a third
/// of its entries snapped to a face. Starts at the origin.
ProblemInstance gen_hypercube_least_squares(std::size_t m, std::size_t n, std::uint64_t seed);

/// min 1/2 x'Hx + b'x over the flow polytope of network, H = Q diag(s) Q' with
/// s log-spaced in [1, cond] and Q a random orthogonal matrix. Starts at the
/// lexicographically smallest s-t path.
ProblemInstance gen_flow_qp(const DagFlowNetwork& network, std::uint64_t seed, double cond,
                            std::optional<double> eta = std::nullopt);

/// l2-regularized logistic regression over the l1-ball of radius beta, on
/// Gaussian features with labels from a noisy linear model. The ball is
/// mapped onto the unit ball by rescaling. lambda defaults to 1/n.
ProblemInstance gen_logistic(std::size_t m, std::size_t n, std::uint64_t seed,
                             std::optional<double> lambda = std::nullopt, double beta = 1.0,
                             std::optional<double> eta = std::nullopt);

/// Declarative problem description used by experiment specs.
struct ProblemSpec {
  std::string family = "simplex_ls";  // simplex_ls, l1_ls, hypercube_ls, flow_qp, logistic
  std::size_t m = 100;
  std::size_t n = 20;
  double density = 0.6;
  double sparsity = 0.7;
  double cond = 1e3;
  std::size_t layers = 10;
  std::size_t width = 6;
  double edge_prob = 0.55;
  std::string network_file;
  std::optional<double> lambda;
  double beta = 1.0;
  std::optional<double> eta;
  std::uint64_t seed = 1;
};

ProblemInstance make_problem(const ProblemSpec& spec);

}  // namespace sfw
