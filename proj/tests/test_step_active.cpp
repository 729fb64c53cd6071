#include <cmath>

#include "doctest.h"
#include "sfw/active_set.hpp"
#include "sfw/problems.hpp"
#include "sfw/step_size.hpp"
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

// f(x) = (L/2)||x||^2
QuadraticObjective isotropic(std::size_t n, double L) {
  return QuadraticObjective(L * Mat::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)),
                            Vec::Zero(static_cast<Eigen::Index>(n)));
}

}  // namespace

TEST_CASE("simple and short steps") {
  CHECK(simple_step(1) == doctest::Approx(1.0));
  CHECK(simple_step(3) == doctest::Approx(0.5));
  CHECK(short_step(-2.0, 4.0, 1.0) == doctest::Approx(0.5));
  CHECK(short_step(-8.0, 1.0, 1.0, 0.7) == doctest::Approx(0.7));
  CHECK(short_step(1.0, 1.0, 1.0) == 0.0);
}

TEST_CASE("golden section and line search") {
  CHECK(golden_section([](double t) { return (t - 0.3) * (t - 0.3); }, 0.0, 1.0) ==
        doctest::Approx(0.3).epsilon(1e-8));
  CHECK(golden_section([](double t) { return -t; }, 0.0, 1.0) == 1.0);
  const auto f = isotropic(2, 2.0);
  const Vec x = vec({1, 0});
  CHECK(line_search(f, x, f.gradient(x), vec({-2, 0}), 1.0) == doctest::Approx(0.5));
}

TEST_CASE("backtracking examples") {
  const auto f = isotropic(2, 2.0);
  const Vec x = vec({1, 0});
  const Vec g = f.gradient(x);
  const BacktrackResult r = backtracking_routine(f, x, f.value(x), g, vec({-1, 0}), 2.0, 2.0, 1.0);
  // L drops to 1.8, the full step fails the test, L doubles to 3.6 and
  // delta = 2 / 3.6 is accepted.
  CHECK(r.L == doctest::Approx(3.6));
  CHECK(r.step == doctest::Approx(2.0 / 3.6));
  CHECK(r.f_trial == doctest::Approx((1.0 - 2.0 / 3.6) * (1.0 - 2.0 / 3.6)));
  CHECK(r.evaluations == 2);
  CHECK(r.descent);

  // A valid global L with tau2 = 1 is accepted without entering the loop.
  BacktrackParams keep;
  keep.tau2 = 1.0;
  const BacktrackResult s = backtracking_routine(f, x, f.value(x), g, vec({-0.5, 0}), 2.0, 2.0, 1.0, keep);
  CHECK(s.L == doctest::Approx(2.0));
  CHECK(s.evaluations == 1);

  const BacktrackResult up = backtracking_routine(f, x, f.value(x), g, vec({-1, 0}), 1e-3, 1e-3, 1.0);
  CHECK(up.L >= 2.0 * 0.9);

  const BacktrackResult ascent = backtracking_routine(f, x, f.value(x), g, vec({1, 0}), 2.0, 1.0, 1.0);
  CHECK_FALSE(ascent.descent);
  CHECK(ascent.step == 0.0);
}

TEST_CASE("accepted backtracking steps satisfy sufficient decrease") {
  Rng rng(12);
  const auto inst = gen_logistic(60, 8, 3);
  const Objective& f = *inst.objective;
  for (int t = 0; t < 100; ++t) {
    const Vec x = 0.3 * testing::gaussian_vec(rng, 8) / 8.0;
    const Vec dir = testing::gaussian_vec(rng, 8) / 4.0;
    const double fx = f.value(x);
    const Vec g = f.gradient(x);
    const double slope = g.dot(dir);
    const double L0 = testing::uniform(rng, 1e-3, 10.0);
    const BacktrackResult r = backtracking_routine(f, x, fx, g, dir, L0, std::min(L0, 1e-3), 1.0);
    if (slope >= 0.0) {
      CHECK_FALSE(r.descent);
      continue;
    }
    CHECK(r.step >= 0.0);
    CHECK(r.step <= 1.0);
    CHECK(r.mu <= r.L);
    CHECK(f.value(x + r.step * dir) ==
          doctest::Approx(r.f_trial).epsilon(1e-14));
    CHECK(r.f_trial <= fx + r.step * slope + 0.5 * r.step * r.step * r.L * dir.squaredNorm());
  }
}

TEST_CASE("active set bookkeeping") {
  ActiveSet s(3);
  s.fw_step(vec({1, 0, 0}), 1.0);
  CHECK(s.size() == 1);
  s.fw_step(vec({0, 1, 0}), 0.25);
  CHECK(s.size() == 2);
  CHECK(s.point().isApprox(vec({0.75, 0.25, 0})));
  CHECK(s.away_index(vec({0, 1, 0})) == 1);
  s.away_step(1, 0.25 / 0.75);
  CHECK(s.size() == 1);
  CHECK(s.point().isApprox(vec({1, 0, 0})));
  s.fw_step(vec({0, 0, 1}), 0.5);
  s.pairwise_step(vec({0, 1, 0}), s.find(vec({0, 0, 1})), 0.5);
  CHECK(s.point().isApprox(vec({0.5, 0.5, 0})));
  CHECK(s.find(vec({0, 0, 1})) == s.size());
  CHECK(s.weight_sum() == doctest::Approx(1.0));

  Rng rng(2);
  ActiveSet r(5);
  r.fw_step(vec({1, 0, 0, 0, 0}), 1.0);
  for (int t = 0; t < 200; ++t) {
    Vec v = Vec::Zero(5);
    v(static_cast<Eigen::Index>(t % 5)) = 1.0;
    const Vec g = testing::gaussian_vec(rng, 5);
    const std::size_t a = r.away_index(g);
    switch (t % 3) {
      case 0: r.fw_step(v, testing::uniform(rng)); break;
      case 1:
        if (r.size() > 1) r.away_step(a, testing::uniform(rng) * r.weight(a) / (1.0 - r.weight(a)));
        break;
      default: r.pairwise_step(v, a, testing::uniform(rng) * r.weight(a)); break;
    }
    CHECK(r.weight_sum() == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r.weight(i) > 0.0);
    CHECK(UnitSimplex(5).contains(r.point(), 1e-12));
  }
}
