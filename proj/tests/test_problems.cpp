#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "sfw/instance_io.hpp"
#include "sfw/problems.hpp"
#include "support/brute.hpp"

using namespace sfw;
using testing::Rng;

namespace {

Vec feasible(const PolytopeModel& P, Rng& rng) {
  // Random convex combination of LMO vertices for random directions.
  Vec x = Vec::Zero(static_cast<Eigen::Index>(P.dim()));
  const Vec w = testing::dirichlet(rng, 4);
  for (Eigen::Index i = 0; i < 4; ++i) x += w(i) * P.lmo(testing::gaussian_vec(rng, P.dim()));
  return x;
}

std::pair<double, double> spectrum(const Mat& H) {
  Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

}  // namespace

TEST_CASE("quadratic objective") {
  Mat H(2, 2);
  H << 2, 0, 0, 4;
  const Vec g = (Vec(2) << -2, 0).finished();
  const QuadraticObjective f(H, g, 1.0);
  const Vec x = (Vec(2) << 1, 1).finished();
  CHECK(f.value(x) == doctest::Approx(0.5 * (2 + 4) - 2 + 1));
  CHECK(f.gradient(x).isApprox((Vec(2) << 0, 4).finished()));
  CHECK(*f.smoothness() == doctest::Approx(4.0));
  CHECK(*f.strong_convexity() == doctest::Approx(2.0));
  const Vec dir = (Vec(2) << 0, -1).finished();
  CHECK(*f.exact_line_search(x, f.gradient(x), dir, 10.0) == doctest::Approx(1.0));
  CHECK(*f.exact_line_search(x, f.gradient(x), dir, 0.5) == doctest::Approx(0.5));

  Mat singular = Mat::Zero(2, 2);
  singular(0, 0) = 1.0;
  CHECK_FALSE(QuadraticObjective(singular, Vec::Zero(2)).strong_convexity().has_value());
  Mat indefinite = Mat::Identity(2, 2);
  indefinite(1, 1) = -1.0;
  CHECK_THROWS_AS(QuadraticObjective(indefinite, Vec::Zero(2)), InvalidArgument);
}

TEST_CASE("least squares constants match an eigensolve of 2A'A") {
  Rng rng(3);
  Mat A(30, 8);
  for (Eigen::Index i = 0; i < A.size(); ++i) A.data()[i] = testing::gaussian_vec(rng, 1)(0);
  const Vec b = testing::gaussian_vec(rng, 30);
  const auto f = QuadraticObjective::least_squares(A, b);
  const auto [lo, hi] = spectrum(2.0 * A.transpose() * A);
  CHECK(*f.smoothness() == doctest::Approx(hi));
  CHECK(*f.strong_convexity() == doctest::Approx(lo));
  const Vec x = testing::gaussian_vec(rng, 8);
  CHECK(f.value(x) == doctest::Approx((A * x - b).squaredNorm()));
}

TEST_CASE("logistic objective") {
  Rng rng(4);
  Mat A(20, 5);
  for (Eigen::Index i = 0; i < A.size(); ++i) A.data()[i] = testing::gaussian_vec(rng, 1)(0);
  Vec labels(20);
  for (Eigen::Index i = 0; i < 20; ++i) labels(i) = i % 2 ? 1.0 : -1.0;
  const LogisticObjective f(A, labels, 0.1);
  CHECK(f.value(Vec::Zero(5)) == doctest::Approx(std::log(2.0)));
  CHECK(*f.strong_convexity() == doctest::Approx(0.1));
  // Large margins must not overflow.
  CHECK(std::isfinite(f.value(Vec::Constant(5, 1e4))));
  CHECK(f.gradient(Vec::Constant(5, 1e4)).allFinite());
  CHECK_FALSE(LogisticObjective(A, labels, 0.0).strong_convexity().has_value());
  CHECK_THROWS_AS(LogisticObjective(A, Vec::Zero(20), 0.1), InvalidArgument);
}

TEST_CASE("gradients agree with finite differences") {
  Rng rng(6);
  std::vector<ProblemInstance> insts;
  insts.push_back(gen_simplex_least_squares(40, 10, 0.6, 1));
  insts.push_back(gen_l1_least_squares(40, 10, 0.7, 2));
  insts.push_back(gen_hypercube_least_squares(30, 8, 3));
  insts.push_back(gen_flow_qp(make_layered_dag(3, 3, 0.6, 1), 4, 100.0));
  insts.push_back(gen_logistic(50, 10, 5));
  insts.push_back(gen_logistic(50, 10, 5, 0.0, 2.5));
  for (const auto& inst : insts) {
    CAPTURE(inst.family);
    CHECK(testing::gradient_check(*inst.objective, inst.x0, rng) <= 1e-4);
    for (int t = 0; t < 10; ++t) {
      CHECK(testing::gradient_check(*inst.objective, feasible(*inst.polytope, rng), rng) <= 1e-4);
    }
    Vec g;
    const Vec x = feasible(*inst.polytope, rng);
    CHECK(inst.objective->value_and_gradient(x, g) == doctest::Approx(inst.objective->value(x)));
    CHECK(g.isApprox(inst.objective->gradient(x)));
  }
}

TEST_CASE("simplex least squares generator") {
  const auto inst = gen_simplex_least_squares(800, 200, 0.6, 9);
  REQUIRE(inst.planted);
  CHECK(UnitSimplex(200).contains(*inst.planted, 1e-12));
  CHECK(inst.planted->minCoeff() >= 0.0);
  CHECK(inst.planted->sum() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(inst.objective->value(*inst.planted) <= 1e-20);
  CHECK(*inst.known_fstar == 0.0);
  CHECK(*inst.objective->strong_convexity() <= *inst.objective->smoothness());
  CHECK(inst.x0.isApprox(Vec::Constant(200, 1.0 / 200)));

  const auto again = gen_simplex_least_squares(800, 200, 0.6, 9);
  CHECK(*again.planted == *inst.planted);
}

TEST_CASE("l1 least squares generator") {
  const auto inst = gen_l1_least_squares(400, 100, 0.7, 2);
  REQUIRE(inst.planted);
  CHECK(inst.planted->lpNorm<1>() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(inst.objective->value(*inst.planted) <= 1e-20);
  const double nonzero = static_cast<double>((inst.planted->array() != 0.0).count());
  CHECK(nonzero / 100.0 == doctest::Approx(0.7).epsilon(0.2));
  CHECK(inst.polytope->geometry().eta == doctest::Approx(100.0));
  CHECK(gen_l1_least_squares(40, 10, 0.7, 2, 3.0).polytope->geometry().eta == doctest::Approx(3.0));
  CHECK_THROWS_AS(gen_l1_least_squares(40, 10, 0.0, 2), InvalidArgument);
}

TEST_CASE("hypercube generator") {
  const auto inst = gen_hypercube_least_squares(40, 10, 3);
  REQUIRE(inst.planted);
  CHECK(Hypercube(10).contains(*inst.planted, 0.0));
  CHECK(inst.objective->value(*inst.planted) <= 1e-20);
}

TEST_CASE("flow QP generator") {
  const DagFlowNetwork net = make_layered_dag(10, 6, 0.55, 3);
  const auto inst = gen_flow_qp(net, 5, 1e3);
  const auto* q = dynamic_cast<const QuadraticObjective*>(inst.objective.get());
  REQUIRE(q != nullptr);
  const auto [lo, hi] = spectrum(q->hessian());
  CHECK(*q->smoothness() == doctest::Approx(hi));
  CHECK(*q->strong_convexity() == doctest::Approx(lo));
  CHECK(hi / lo == doctest::Approx(1e3).epsilon(1e-6));
  CHECK(inst.polytope->is_vertex(inst.x0));

  const auto iso = gen_flow_qp(net, 5, 1.0);
  CHECK(*iso.objective->smoothness() == doctest::Approx(*iso.objective->strong_convexity()));
}

TEST_CASE("logistic generator") {
  const auto inst = gen_logistic(100, 20, 7);
  const auto* f = dynamic_cast<const LogisticObjective*>(inst.objective.get());
  REQUIRE(f != nullptr);
  CHECK(f->lambda() == doctest::Approx(1.0 / 20));
  CHECK(inst.polytope->kind() == PolytopeKind::l1_ball);
  CHECK_FALSE(gen_logistic(100, 20, 7, 0.0).objective->strong_convexity().has_value());
}

TEST_CASE("make_problem dispatch") {
  ProblemSpec spec;
  spec.family = "hypercube_ls";
  spec.m = 20;
  spec.n = 5;
  CHECK(make_problem(spec).polytope->kind() == PolytopeKind::hypercube);
  spec.family = "flow_qp";
  spec.layers = 3;
  spec.width = 2;
  CHECK(make_problem(spec).polytope->kind() == PolytopeKind::flow);
  spec.family = "bogus";
  CHECK_THROWS_AS(make_problem(spec), InvalidArgument);
}

TEST_CASE("instance files round-trip") {
  Rng rng(8);
  std::vector<ProblemInstance> insts;
  insts.push_back(gen_simplex_least_squares(20, 6, 0.6, 1));
  insts.push_back(gen_l1_least_squares(20, 6, 0.7, 2, 2.0));
  insts.push_back(gen_flow_qp(make_layered_dag(3, 2, 0.7, 1), 4, 10.0));
  insts.push_back(gen_logistic(30, 6, 5, 0.2, 3.0));
  for (const auto& inst : insts) {
    CAPTURE(inst.family);
    std::stringstream buf;
    write_instance(buf, inst);
    const ProblemInstance back = read_instance(buf);
    CHECK(back.family == inst.family);
    CHECK(back.seed == inst.seed);
    CHECK(back.x0 == inst.x0);
    CHECK(back.known_fstar == inst.known_fstar);
    CHECK(back.polytope->kind() == inst.polytope->kind());
    CHECK(back.polytope->geometry().eta == inst.polytope->geometry().eta);
    for (int t = 0; t < 5; ++t) {
      const Vec x = feasible(*inst.polytope, rng);
      CHECK(back.objective->value(x) == inst.objective->value(x));
    }
  }
  std::stringstream bad("{\"family\": 1}\n");
  CHECK_THROWS_AS(read_instance(bad), InvalidArgument);
}
