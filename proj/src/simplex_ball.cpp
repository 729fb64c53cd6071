#include "sfw/simplex_ball.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sfw {

SimplexBall::SimplexBall(Vec center, double radius)
    : center_(std::move(center)), radius_(radius) {
  if (center_.size() == 0) throw InvalidArgument("SimplexBall: empty center");
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
    throw InvalidArgument("SimplexBall: radius must be positive, got " + std::to_string(radius_));
  }
}

void SimplexBall::reset_from_lower(const Vec& lower, double radius) {
  if (lower.size() == 0) throw InvalidArgument("SimplexBall: empty center");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("SimplexBall: radius must be positive, got " + std::to_string(radius));
  }
  center_.resize(lower.size());
  center_.array() = lower.array() + radius;
  radius_ = radius;
}

Vec SimplexBall::lower_corner() const { return center_.array() - radius_; }

Vec SimplexBall::vertex(BallVertexIndex i) const {
  if (i.index >= dim()) throw InvalidArgument("SimplexBall::vertex: index out of range");
  Vec v = lower_corner();
  v[static_cast<Eigen::Index>(i.index)] += static_cast<double>(dim()) * radius_;
  return v;
}

SimplexBall unit_simplex_ball(std::size_t n) {
  if (n == 0) throw InvalidArgument("unit_simplex_ball: dimension must be >= 1");
  const double inv = 1.0 / static_cast<double>(n);
  return SimplexBall(Vec::Constant(static_cast<Eigen::Index>(n), inv), inv);
}

Vec barycentric(const SimplexBall& ball, const Vec& y) {
  require_same_dim(static_cast<std::size_t>(y.size()), ball.dim(), "barycentric");
  const double scale = static_cast<double>(ball.dim()) * ball.radius();
  return (y - ball.center()).array() / scale + 1.0 / static_cast<double>(ball.dim());
}

bool contains(const SimplexBall& ball, const Vec& y, double tol) {
  require_same_dim(static_cast<std::size_t>(y.size()), ball.dim(), "contains");
  const double scale = static_cast<double>(ball.dim()) * ball.radius();
  const Vec lambda = (y - ball.center()).array() / scale + ball.radius() / scale;
  if (lambda.minCoeff() < -tol) return false;
  return std::abs(lambda.sum() - 1.0) <= tol;
}

SimplexBall intersect_with_unit_simplex(const SimplexBall& ball, double tol) {
  const Vec& x = ball.center();
  const double d = ball.radius();
  const auto n = static_cast<double>(ball.dim());
  if (std::abs(x.sum() - 1.0) > tol || x.minCoeff() < -tol) {
    throw InfeasiblePoint("intersect_with_unit_simplex: center not in the unit simplex");
  }
  const double d_hat = std::min(x.cwiseMin(d).sum() / n, d);
  if (!(d_hat > 0.0)) throw DegenerateBall("intersect_with_unit_simplex: zero radius");
  Vec x_hat = x.cwiseMax(d).array() + (d_hat - d);
  return SimplexBall(std::move(x_hat), d_hat);
}

SimplexBall intersect(const SimplexBall& a, const SimplexBall& b, double tol) {
  require_same_dim(a.dim(), b.dim(), "intersect");
  if (a.radius() == b.radius() && a.center() == b.center()) return a;

  const double sa = a.coordinate_sum();
  const double sb = b.coordinate_sum();
  if (std::abs(sa - sb) > tol * std::max(1.0, std::abs(sa))) {
    throw EmptyIntersection("intersect: balls lie on different sum hyperplanes");
  }
  const double s = 0.5 * (sa + sb);
  const auto n = static_cast<double>(a.dim());
  // Lower corners bound every coordinate from below; the intersection is the
  // simplex with the componentwise-max corner on the common hyperplane.
  Vec corner = a.lower_corner().cwiseMax(b.lower_corner());
  double d3 = (s - corner.sum()) / n;
  if (!(d3 > tol)) throw EmptyIntersection("intersect: simplex balls do not overlap");
  d3 = std::min({d3, a.radius(), b.radius()});
  corner.array() += d3;
  return SimplexBall(std::move(corner), d3);
}

LinearMinimizer argmin_linear(const SimplexBall& ball, const Vec& c, kernels::Exec exec) {
  require_same_dim(static_cast<std::size_t>(c.size()), ball.dim(), "argmin_linear");
  const std::size_t i = kernels::argmin(as_span(c), exec);
  return {ball.vertex(BallVertexIndex{i}), BallVertexIndex{i}};
}

double diameter(const SimplexBall& ball) {
  return std::sqrt(2.0) * static_cast<double>(ball.dim()) * ball.radius();
}

}  // namespace sfw
