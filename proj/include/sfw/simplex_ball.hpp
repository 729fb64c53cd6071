#pragma once

// Simplex balls S(x, d) = {(x - d*1) + n*d*lambda : lambda in S_n}: translated
// and scaled copies of the unit simplex, closed under intersection.

#include <cstddef>

#include "sfw/kernels.hpp"
#include "sfw/types.hpp"

namespace sfw {

/// Identifies the vertex center + radius * (n * e_index - 1) of a ball.
struct BallVertexIndex {
  std::size_t index = 0;
  friend bool operator==(BallVertexIndex, BallVertexIndex) = default;
};

class SimplexBall {
 public:
  /// Throws InvalidArgument unless radius > 0 and the center is nonempty.
  SimplexBall(Vec center, double radius);

  const Vec& center() const { return center_; }
  double radius() const { return radius_; }
  std::size_t dim() const { return static_cast<std::size_t>(center_.size()); }

  /// center - radius * 1; the point with barycentric coordinates all zero.
  Vec lower_corner() const;
  Vec vertex(BallVertexIndex i) const;
  /// Every point in the ball shares this coordinate sum.
  double coordinate_sum() const { return center_.sum(); }
  /// Becomes S(lower + radius * 1, radius), reusing the center's storage.
  void reset_from_lower(const Vec& lower, double radius);

 private:
  Vec center_;
  double radius_;
};

/// S(1/n * 1, 1/n), whose point set is the unit simplex S_n.
SimplexBall unit_simplex_ball(std::size_t n);

/// lambda = (y - center + radius) / (n * radius).
Vec barycentric(const SimplexBall& ball, const Vec& y);

bool contains(const SimplexBall& ball, const Vec& y, double tol = kDefaultTol);

/// S_n ∩ S(x, d) for a center x in S_n (checked within tol).
SimplexBall intersect_with_unit_simplex(const SimplexBall& ball, double tol = kDefaultTol);

/// S(x1, d1) ∩ S(x2, d2). Both centers must have the same coordinate sum (1 for
/// centers in S_n). Throws EmptyIntersection when the result radius is <= tol.
SimplexBall intersect(const SimplexBall& a, const SimplexBall& b, double tol = kDefaultTol);

struct LinearMinimizer {
  Vec point;
  BallVertexIndex vertex;
};

/// Minimizes <c, y> over the ball; ties go to the smallest index.
LinearMinimizer argmin_linear(const SimplexBall& ball, const Vec& c,
                              kernels::Exec exec = kernels::Exec::serial);

/// sqrt(2) * n * radius.
double diameter(const SimplexBall& ball);

}  // namespace sfw
