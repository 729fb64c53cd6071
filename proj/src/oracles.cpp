#include "sfw/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace sfw {

SimplexRestrictedBall::SimplexRestrictedBall(SimplexBall hat)
    : hat_(std::move(hat)),
      lower_(hat_.lower_corner()),
      vertex_step_(static_cast<double>(hat_.dim()) * hat_.radius()) {}

void slmo_prepare(const Vec& x, double d, SimplexRestrictedBall& rb, double tol,
                  kernels::Exec exec) {
  if (x.size() == 0) throw InvalidArgument("slmo_prepare: empty point");
  if (!(d > 0.0) || !std::isfinite(d)) throw InvalidArgument("slmo_prepare: radius must be positive");
  if (std::abs(x.sum() - 1.0) > tol || x.minCoeff() < -tol) {
    throw InfeasiblePoint("slmo_prepare: point not in the unit simplex");
  }
  // lower = x - min(x, d) = max(x, d) - d, and n * d̂ = sum min(x, d).
  rb.lower_.resize(x.size());
  const double mass = kernels::clip_split(as_span(x), d, as_span(rb.lower_), exec);
  if (!(mass > 0.0)) throw DegenerateBall("slmo_prepare: zero radius");
  const double d_hat = std::min(mass / static_cast<double>(x.size()), d);
  rb.hat_.reset_from_lower(rb.lower_, d_hat);
  rb.vertex_step_ = static_cast<double>(x.size()) * d_hat;
}

SimplexRestrictedBall slmo_prepare(const Vec& x, double d, double tol, kernels::Exec exec) {
  SimplexRestrictedBall rb(unit_simplex_ball(static_cast<std::size_t>(std::max<Eigen::Index>(x.size(), 1))));
  slmo_prepare(x, d, rb, tol, exec);
  return rb;
}

BallVertexIndex slmo_solve(const SimplexRestrictedBall& rb, const Vec& c, Vec& out,
                           kernels::Exec exec) {
  require_same_dim(static_cast<std::size_t>(c.size()), rb.dim(), "slmo_solve");
  const std::size_t i = kernels::argmin(as_span(c), exec);
  out = rb.lower();
  out(static_cast<Eigen::Index>(i)) += rb.vertex_step();
  return BallVertexIndex{i};
}

Vec slmo_solve(const SimplexRestrictedBall& rb, const Vec& c, kernels::Exec exec) {
  Vec out;
  slmo_solve(rb, c, out, exec);
  return out;
}

Vec slmo(const Vec& x, double d, const Vec& c, double tol, kernels::Exec exec) {
  return slmo_solve(slmo_prepare(x, d, tol, exec), c, exec);
}

PolytopeRestrictedBall slmo_p_prepare(const CaratheodoryRep& rep, double d) {
  if (rep.empty()) throw InvalidArgument("slmo_p_prepare: empty representation");
  if (!(d > 0.0) || !std::isfinite(d)) throw InvalidArgument("slmo_p_prepare: radius must be positive");
  PolytopeRestrictedBall rb{Vec::Zero(static_cast<Eigen::Index>(rep.dim)), 0.0, d};
  for (const Atom& a : rep.atoms) {
    const double taken = std::min(a.weight, d);
    rb.scale += taken;
    if (a.weight > taken) rb.base.noalias() += (a.weight - taken) * a.vertex;
  }
  return rb;
}

void slmo_p_solve(const PolytopeRestrictedBall& rb, const PolytopeModel& P, const Vec& c,
                  Vec& out, Vec& vertex, kernels::Exec exec) {
  require_same_dim(static_cast<std::size_t>(rb.base.size()), P.dim(), "slmo_p_solve");
  P.lmo(c, vertex, exec);
  out = rb.base;
  kernels::axpy(rb.scale, as_span(vertex), as_span(out), exec);
}

Vec slmo_p_solve(const PolytopeRestrictedBall& rb, const PolytopeModel& P, const Vec& c,
                 kernels::Exec exec) {
  Vec out;
  Vec vertex;
  slmo_p_solve(rb, P, c, out, vertex, exec);
  return out;
}

Vec slmo_p(const CaratheodoryRep& rep, double d, const PolytopeModel& P, const Vec& c,
           kernels::Exec exec) {
  return slmo_p_solve(slmo_p_prepare(rep, d), P, c, exec);
}

Vec project(const PolytopeModel& P, const Vec& z) { return P.project(z); }

}  // namespace sfw
