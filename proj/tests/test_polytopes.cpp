#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "sfw/polytope.hpp"
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

DagFlowNetwork two_parallel_edges() { return DagFlowNetwork(2, {{0, 1}, {0, 1}}, 0, 1); }

// s=0 -> {1, 2} -> t=3, plus a shortcut 1 -> 2.
DagFlowNetwork diamond() { return DagFlowNetwork(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 2}}, 0, 3); }

Vec random_point(const PolytopeModel& P, Rng& rng, const std::vector<Vec>& flow_paths = {}) {
  const std::size_t n = P.dim();
  switch (P.kind()) {
    case PolytopeKind::simplex: return testing::sparse_simplex_point(rng, n, 0.3);
    case PolytopeKind::hypercube: {
      Vec x(static_cast<Eigen::Index>(n));
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double u = testing::uniform(rng);
        x(i) = u < 0.2 ? 0.0 : (u < 0.4 ? 1.0 : testing::uniform(rng));
      }
      return x;
    }
    case PolytopeKind::l1_ball: {
      Vec x = testing::sparse_simplex_point(rng, n, 0.3) * testing::uniform(rng, 0.0, 1.0);
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (testing::uniform(rng) < 0.5) x(i) = -x(i);
      }
      return x;
    }
    case PolytopeKind::flow: {
      const Vec w = testing::sparse_simplex_point(rng, flow_paths.size(), 0.5);
      Vec x = Vec::Zero(static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < flow_paths.size(); ++i) x += w(static_cast<Eigen::Index>(i)) * flow_paths[i];
      return x;
    }
  }
  return {};
}

}  // namespace

TEST_CASE("flow network validation") {
  CHECK_THROWS_AS(DagFlowNetwork(2, {{0, 1}, {1, 0}}, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(DagFlowNetwork(3, {{0, 1}}, 0, 2), InvalidArgument);
  // Edge 2 -> 1 has no path from the source.
  CHECK_THROWS_AS(DagFlowNetwork(3, {{0, 1}, {2, 1}}, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(DagFlowNetwork(2, {{0, 5}}, 0, 1), InvalidArgument);

  const DagFlowNetwork d = diamond();
  CHECK(d.longest_path_edges() == 3);
  std::stringstream io;
  d.write(io);
  const DagFlowNetwork back = DagFlowNetwork::read(io);
  CHECK(back.edges() == d.edges());
  CHECK(back.source() == 0);
  CHECK(back.target() == 3);
}

TEST_CASE("layered generator is valid and reproducible") {
  const DagFlowNetwork a = make_layered_dag(10, 6, 0.55, 3);
  const DagFlowNetwork b = make_layered_dag(10, 6, 0.55, 3);
  CHECK(a.edges() == b.edges());
  CHECK(a.num_edges() > 100);
  CHECK(a.longest_path_edges() == 11);
}

TEST_CASE("lmo examples") {
  CHECK(UnitSimplex(3).lmo(vec({3, 1, 2})).isApprox(vec({0, 1, 0})));
  CHECK(Hypercube(3).lmo(vec({-1, 2, 0})) == vec({1, 0, 0}));
  const Vec l1 = L1Ball(3).lmo(vec({0.5, -2, 1}));
  CHECK(l1 == vec({0, 1, 0}));
  const FlowPolytope F(two_parallel_edges());
  CHECK(F.lmo(vec({5, 2})) == vec({0, 1}));
  CHECK(F.lmo(vec({2, 2})) == vec({1, 0}));
}

TEST_CASE("lmo matches vertex enumeration") {
  Rng rng(8);
  const DagFlowNetwork net = make_layered_dag(4, 3, 0.6, 2);
  const FlowPolytope F(net);
  const auto paths = testing::enumerate_paths(net);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 8);
    const Vec c = testing::gaussian_vec(rng, n);
    for (auto exec : {kernels::Exec::serial, kernels::Exec::parallel}) {
      const Vec s = UnitSimplex(n).lmo(c, exec);
      CHECK(c.dot(s) == doctest::Approx(c.minCoeff()));
      const Vec h = Hypercube(n).lmo(c, exec);
      CHECK(c.dot(h) == doctest::Approx(testing::min_over(testing::cube_vertices(n), c)));
      const Vec l = L1Ball(n).lmo(c, exec);
      CHECK(c.dot(l) == doctest::Approx(testing::min_over(testing::l1_vertices(n), c)));
    }
    const Vec cf = testing::gaussian_vec(rng, net.num_edges());
    const Vec p = F.lmo(cf);
    CHECK(F.is_vertex(p));
    CHECK(cf.dot(p) == doctest::Approx(testing::min_over(paths, cf)).epsilon(1e-12));
  }
}

TEST_CASE("geometry constants") {
  const auto& h = Hypercube(9).geometry();
  CHECK(h.diameter == doctest::Approx(3.0));
  CHECK(h.eta == doctest::Approx(3.0));
  for (std::size_t n : {2UL, 10UL, 1000UL}) {
    CHECK(UnitSimplex(n).geometry().diameter == doctest::Approx(std::sqrt(2.0)));
    CHECK(UnitSimplex(n).geometry().eta == doctest::Approx(std::sqrt(2.0)));
  }
  CHECK(L1Ball(100).geometry().diameter == doctest::Approx(2.0));
  CHECK(L1Ball(100).geometry().eta == doctest::Approx(100.0));
  CHECK(L1Ball(100, 10.0).geometry().eta == doctest::Approx(10.0));
  CHECK_THROWS_AS(L1Ball(100, 0.5), InvalidArgument);
  CHECK_THROWS_AS(L1Ball(100, 101.0), InvalidArgument);

  // Brute-force diameter of a small flow polytope over its vertex pairs.
  const DagFlowNetwork net = diamond();
  const FlowPolytope F(net);
  const auto paths = testing::enumerate_paths(net);
  double far = 0.0;
  for (const Vec& p : paths) for (const Vec& q : paths) far = std::max(far, (p - q).norm());
  CHECK(F.geometry().diameter >= far - 1e-12);
  CHECK(F.geometry().eta >= 1.0);
}

TEST_CASE("caratheodory examples") {
  SUBCASE("hypercube vertex") {
    const auto rep = Hypercube(4).caratheodory(Vec::Ones(4));
    REQUIRE(rep.size() == 1);
    CHECK(rep.atoms[0].weight == doctest::Approx(1.0));
    CHECK(rep.atoms[0].vertex == Vec::Ones(4));
  }
  SUBCASE("l1 signed representation") {
    const auto rep = L1Ball(2).caratheodory(vec({0.3, -0.2}));
    REQUIRE(rep.size() == 3);
    auto weight_of = [&](const Vec& v) {
      for (const Atom& a : rep.atoms) if (a.vertex == v) return a.weight;
      return -1.0;
    };
    CHECK(weight_of(vec({1, 0})) == doctest::Approx(0.3));
    CHECK(weight_of(vec({0, -1})) == doctest::Approx(0.45));
    CHECK(weight_of(vec({0, 1})) == doctest::Approx(0.25));
    CHECK(rep.weight_sum() == doctest::Approx(1.0));
    CHECK(rep.point().isApprox(vec({0.3, -0.2})));
  }
  SUBCASE("flow vertex") {
    const FlowPolytope F(diamond());
    const Vec path = vec({1, 0, 0, 1, 1});
    const PeelResult r = F.peel(path);
    REQUIRE(r.rep.size() == 1);
    CHECK(r.rep.atoms[0].weight == doctest::Approx(1.0));
    CHECK(r.iterations == 1);
  }
  SUBCASE("infeasible input") {
    CHECK_THROWS_AS(UnitSimplex(3).caratheodory(vec({0.5, 0.6, 0})), InfeasiblePoint);
    CHECK_THROWS_AS(Hypercube(2).caratheodory(vec({1.5, 0})), InfeasiblePoint);
    CHECK_THROWS_AS(L1Ball(2).caratheodory(vec({0.7, -0.7})), InfeasiblePoint);
    CHECK_THROWS_AS(FlowPolytope(diamond()).caratheodory(vec({1, 0, 0, 0, 0})), InfeasiblePoint);
  }
}

TEST_CASE("caratheodory properties") {
  Rng rng(17);
  const DagFlowNetwork net = make_layered_dag(5, 4, 0.5, 7);
  const auto paths = testing::enumerate_paths(net);
  std::vector<std::unique_ptr<PolytopeModel>> models;
  models.push_back(std::make_unique<UnitSimplex>(7));
  models.push_back(std::make_unique<Hypercube>(7));
  models.push_back(std::make_unique<L1Ball>(7));
  models.push_back(std::make_unique<FlowPolytope>(net));
  for (const auto& P : models) {
    CAPTURE(to_string(P->kind()));
    for (int t = 0; t < 50; ++t) {
      const Vec x = random_point(*P, rng, paths);
      REQUIRE(P->contains(x, 1e-12));
      const CaratheodoryRep rep = P->caratheodory(x);
      CHECK(rep.size() <= P->dim() + 1);
      CHECK(rep.weight_sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK((rep.point() - x).norm() <= 1e-10);
      for (const Atom& a : rep.atoms) {
        CHECK(a.weight > 0.0);
        CHECK(P->is_vertex(a.vertex));
      }
    }
  }
}

TEST_CASE("vertex predicates") {
  CHECK(UnitSimplex(3).is_vertex(vec({0, 1, 0})));
  CHECK_FALSE(UnitSimplex(3).is_vertex(vec({0.5, 0.5, 0})));
  CHECK(Hypercube(2).is_vertex(vec({1, 0})));
  CHECK_FALSE(Hypercube(2).is_vertex(vec({1, 0.5})));
  CHECK(L1Ball(2).is_vertex(vec({0, -1})));
  CHECK_FALSE(L1Ball(2).is_vertex(vec({0.5, -0.5})));
  const FlowPolytope F(diamond());
  CHECK(F.is_vertex(vec({0, 1, 0, 1, 0})));
  CHECK_FALSE(F.is_vertex(vec({0.5, 0.5, 0, 1, 0})));
}

TEST_CASE("projection examples") {
  CHECK(Hypercube(3).project(vec({2, -1, 0.5})) == vec({1, 0, 0.5}));
  CHECK(UnitSimplex(2).project(vec({2, 0})).isApprox(vec({1, 0})));
  const Vec inside = vec({0.2, -0.3, 0.1});
  CHECK(L1Ball(3).project(inside).isApprox(inside));
  CHECK_THROWS_AS(FlowPolytope(diamond()).project(Vec::Zero(5)), UnsupportedOperation);
}

TEST_CASE("projection is the nearest feasible point") {
  Rng rng(31);
  std::vector<std::unique_ptr<PolytopeModel>> models;
  models.push_back(std::make_unique<UnitSimplex>(5));
  models.push_back(std::make_unique<Hypercube>(5));
  models.push_back(std::make_unique<L1Ball>(5));
  for (const auto& P : models) {
    for (int t = 0; t < 40; ++t) {
      const Vec z = 2.0 * testing::gaussian_vec(rng, 5);
      const Vec p = P->project(z);
      CHECK(P->contains(p, 1e-10));
      // Variational inequality <z - p, y - p> <= 0 on sampled feasible y.
      for (int s = 0; s < 50; ++s) {
        const Vec y = random_point(*P, rng);
        CHECK((z - p).dot(y - p) <= 1e-9);
      }
    }
  }
  CHECK(project_simplex(vec({1, 1}), 2.0).isApprox(vec({1, 1})));
}

TEST_CASE("make_polytope") {
  CHECK(make_polytope(PolytopeKind::hypercube, 4)->dim() == 4);
  CHECK(parse_polytope_kind("l1_ball") == PolytopeKind::l1_ball);
  CHECK_THROWS_AS(parse_polytope_kind("cube"), InvalidArgument);
  CHECK_THROWS_AS(make_polytope(PolytopeKind::flow, 4), InvalidArgument);
}
