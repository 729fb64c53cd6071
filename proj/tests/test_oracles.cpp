#include <cmath>

#include "doctest.h"
#include "sfw/oracles.hpp"
#include "support/brute.hpp"

using namespace sfw;
using testing::Rng;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("slmo_prepare") {
  const auto a = slmo_prepare(Vec::Constant(3, 1.0 / 3), 1.0 / 3);
  CHECK(a.hat().radius() == doctest::Approx(1.0 / 3));
  CHECK(a.hat().center().isApprox(Vec::Constant(3, 1.0 / 3)));

  const auto b = slmo_prepare(vec({0.5, 0.3, 0.2}), 0.25);
  CHECK(b.hat().radius() == doctest::Approx(0.7 / 3));
  CHECK(b.vertex_step() == doctest::Approx(0.7));
  CHECK(b.lower().isApprox(vec({0.25, 0.05, 0.0})));

  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 6);
    const Vec x = testing::dirichlet(rng, n);
    const auto r = slmo_prepare(x, 1.0 + testing::uniform(rng));
    CHECK(r.hat().radius() == doctest::Approx(1.0 / static_cast<double>(n)));
    for (int s = 0; s < 50; ++s) {
      const Vec y = testing::dirichlet(rng, n);
      CHECK(contains(r.hat(), y, 1e-9));
    }
  }
  CHECK_THROWS_AS(slmo_prepare(vec({0.5, 0.6, 0.2}), 0.1), InfeasiblePoint);
  CHECK_THROWS_AS(slmo_prepare(vec({0.5, 0.3, 0.2}), 0.0), InvalidArgument);
}

TEST_CASE("slmo_solve examples") {
  const auto unit = slmo_prepare(Vec::Constant(3, 1.0 / 3), 1.0 / 3);
  CHECK(slmo_solve(unit, vec({3, 1, 2})).isApprox(vec({0, 1, 0})));

  const auto rb = slmo_prepare(vec({0.5, 0.3, 0.2}), 0.25);
  CHECK((slmo_solve(rb, vec({1, -1, 0})) - vec({0.25, 0.75, 0})).norm() < 1e-14);
  CHECK((slmo_solve(rb, vec({-1, 1, 1})) - vec({0.95, 0.05, 0})).norm() < 1e-14);
  const auto verts = testing::ball_vertices(rb.hat().center(), rb.hat().radius());
  CHECK(vec({1, -1, 0}).dot(vec({0.25, 0.75, 0})) ==
        doctest::Approx(testing::min_over(verts, vec({1, -1, 0}))));
}

TEST_CASE("slmo is exact on S_n intersected with S(x, d)") {
  Rng rng(2024);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
    const Vec x = testing::sparse_simplex_point(rng, n, 0.3);
    const double d = testing::uniform(rng, 1e-3, 1.0);
    const Vec c = testing::gaussian_vec(rng, n);
    for (auto exec : {kernels::Exec::serial, kernels::Exec::parallel}) {
      const auto rb = slmo_prepare(x, d, kDefaultTol, exec);
      const Vec y = slmo_solve(rb, c, exec);
      const double best = testing::min_over(testing::ball_vertices(rb.hat().center(), rb.hat().radius()), c);
      CHECK(std::abs(c.dot(y) - best) <= 1e-12 * std::max(1.0, std::abs(best)));
      CHECK(testing::in_unit_simplex(y, 1e-9));
      CHECK(testing::in_ball(x, d, y, 1e-9));
    }
    // Dominates sampled points of the intersection.
    const Vec y = slmo(x, d, c);
    for (int s = 0; s < 20; ++s) {
      const Vec z = testing::sample_in_ball(rng, x, d);
      if (testing::in_unit_simplex(z, 0.0)) CHECK(c.dot(y) <= c.dot(z) + 1e-12);
    }
  }
}

TEST_CASE("slmo_p_prepare") {
  SUBCASE("full radius degenerates to the LMO") {
    const Hypercube H(2);
    CaratheodoryRep rep{{{vec({1, 0}), 1.0}}, 2};
    const auto rb = slmo_p_prepare(rep, 1.0);
    CHECK(rb.scale == doctest::Approx(1.0));
    CHECK(rb.base.norm() == 0.0);
    CHECK(slmo_p_solve(rb, H, vec({1, 1})) == vec({0, 0}));
  }
  SUBCASE("two atoms") {
    const Vec v1 = vec({1, 0, 0}), v2 = vec({0, 1, 0});
    CaratheodoryRep rep{{{v1, 0.6}, {v2, 0.4}}, 3};
    const auto rb = slmo_p_prepare(rep, 0.1);
    CHECK(rb.scale == doctest::Approx(0.2));
    CHECK(rb.base.isApprox(0.5 * v1 + 0.3 * v2));
    const UnitSimplex S(3);
    const Vec y = slmo_p_solve(rb, S, vec({0, 0, -1}));
    CHECK(S.contains(y));
    CHECK(y.isApprox(vec({0.5, 0.3, 0.2})));
  }
  SUBCASE("flow two paths") {
    const FlowPolytope F(DagFlowNetwork(2, {{0, 1}, {0, 1}}, 0, 1));
    const Vec p1 = vec({1, 0}), p2 = vec({0, 1});
    CaratheodoryRep rep{{{p1, 0.5}, {p2, 0.5}}, 2};
    const Vec c = vec({1, 0});
    const Vec y = slmo_p(rep, 0.2, F, c);
    CHECK(y.isApprox(0.3 * p1 + 0.7 * p2));
    CHECK(F.contains(y));
    CHECK(c.dot(y) <= c.dot(rep.point()));
  }
  CHECK_THROWS_AS(slmo_p_prepare(CaratheodoryRep{{}, 2}, 0.1), InvalidArgument);
}

TEST_CASE("slmo_p on the simplex agrees with slmo") {
  Rng rng(77);
  const double tol = 1e-12;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
    const UnitSimplex S(n);
    const Vec x = testing::dirichlet(rng, n);
    const double d = testing::uniform(rng, 1e-3, 1.0);
    const Vec c = testing::gaussian_vec(rng, n);
    const Vec a = slmo_p(S.caratheodory(x), d, S, c);
    const Vec b = slmo(x, d, c);
    CHECK((a - b).lpNorm<Eigen::Infinity>() <= tol);
  }
}

TEST_CASE("slmo_p distance bound") {
  Rng rng(5);
  const Hypercube H(6);
  for (int t = 0; t < 100; ++t) {
    Vec x(6);
    for (Eigen::Index i = 0; i < 6; ++i) x(i) = testing::uniform(rng);
    const double d = testing::uniform(rng, 1e-3, 1.0);
    const Vec c = testing::gaussian_vec(rng, 6);
    const Vec y = slmo_p(H.caratheodory(x), d, H, c);
    CHECK(H.contains(y));
    CHECK((x - y).norm() <= 7.0 * d * H.geometry().diameter + 1e-12);
  }
}

TEST_CASE("project dispatches to the polytope") {
  CHECK(project(UnitSimplex(2), vec({2, 0})).isApprox(vec({1, 0})));
  CHECK(project(Hypercube(2), vec({2, -1})) == vec({1, 0}));
}
