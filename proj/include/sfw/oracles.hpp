#pragma once

// Simplex-restricted linear minimization: an expensive prepare phase that
// builds S(x, d) ∩ P once, and a solve phase costing one LMO plus one vector
// update per call.

#include <cstddef>

#include "sfw/kernels.hpp"
#include "sfw/polytope.hpp"
#include "sfw/simplex_ball.hpp"
#include "sfw/types.hpp"

namespace sfw {

/// S(x̂, d̂) together with its lower corner, cached for repeated solves.
class SimplexRestrictedBall {
 public:
  explicit SimplexRestrictedBall(SimplexBall hat);

  const SimplexBall& hat() const { return hat_; }
  /// x̂ - d̂ * 1
  const Vec& lower() const { return lower_; }
  /// n * d̂, the mass added to the selected coordinate.
  double vertex_step() const { return vertex_step_; }
  std::size_t dim() const { return hat_.dim(); }

 private:
  friend void slmo_prepare(const Vec& x, double d, SimplexRestrictedBall& rb, double tol,
                           kernels::Exec exec);

  SimplexBall hat_;
  Vec lower_;
  double vertex_step_;
};

/// S_n ∩ S(x, d) for x in the unit simplex.
SimplexRestrictedBall slmo_prepare(const Vec& x, double d, double tol = kDefaultTol,
                                   kernels::Exec exec = kernels::Exec::serial);
/// In-place variant that reuses rb's storage.
void slmo_prepare(const Vec& x, double d, SimplexRestrictedBall& rb, double tol = kDefaultTol,
                  kernels::Exec exec = kernels::Exec::serial);

/// Minimizer of <c, y> over the restricted ball. Writes into out and returns
/// the selected vertex.
BallVertexIndex slmo_solve(const SimplexRestrictedBall& rb, const Vec& c, Vec& out,
                           kernels::Exec exec = kernels::Exec::serial);
Vec slmo_solve(const SimplexRestrictedBall& rb, const Vec& c,
               kernels::Exec exec = kernels::Exec::serial);

Vec slmo(const Vec& x, double d, const Vec& c, double tol = kDefaultTol,
         kernels::Exec exec = kernels::Exec::serial);

/// Polytope version: the SLMO output is base + scale * lmo(c).
struct PolytopeRestrictedBall {
  Vec base;
  double scale = 0.0;
  double radius = 0.0;
};

PolytopeRestrictedBall slmo_p_prepare(const CaratheodoryRep& rep, double d);

/// vertex receives the LMO vertex, out the restricted minimizer.
void slmo_p_solve(const PolytopeRestrictedBall& rb, const PolytopeModel& P, const Vec& c,
                  Vec& out, Vec& vertex, kernels::Exec exec = kernels::Exec::serial);
Vec slmo_p_solve(const PolytopeRestrictedBall& rb, const PolytopeModel& P, const Vec& c,
                 kernels::Exec exec = kernels::Exec::serial);

Vec slmo_p(const CaratheodoryRep& rep, double d, const PolytopeModel& P, const Vec& c,
           kernels::Exec exec = kernels::Exec::serial);

/// Euclidean projection onto P (simplex, hypercube and l1-ball only).
Vec project(const PolytopeModel& P, const Vec& z);

}  // namespace sfw
