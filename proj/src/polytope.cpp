#include "sfw/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace sfw {

std::string to_string(PolytopeKind kind) {
  switch (kind) {
    case PolytopeKind::simplex: return "simplex";
    case PolytopeKind::hypercube: return "hypercube";
    case PolytopeKind::l1_ball: return "l1_ball";
    case PolytopeKind::flow: return "flow";
  }
  return "unknown";
}

PolytopeKind parse_polytope_kind(const std::string& name) {
  if (name == "simplex") return PolytopeKind::simplex;
  if (name == "hypercube") return PolytopeKind::hypercube;
  if (name == "l1_ball" || name == "l1") return PolytopeKind::l1_ball;
  if (name == "flow") return PolytopeKind::flow;
  throw InvalidArgument("unknown polytope family: " + name);
}

Vec CaratheodoryRep::point() const {
  Vec p = Vec::Zero(static_cast<Eigen::Index>(dim));
  for (const Atom& a : atoms) p.noalias() += a.weight * a.vertex;
  return p;
}

double CaratheodoryRep::weight_sum() const {
  double s = 0.0;
  for (const Atom& a : atoms) s += a.weight;
  return s;
}

PolytopeModel::PolytopeModel(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InvalidArgument("polytope dimension must be positive");
}

Vec PolytopeModel::lmo(const Vec& c, kernels::Exec exec) const {
  Vec out;
  lmo(c, out, exec);
  return out;
}

Vec PolytopeModel::project(const Vec&) const {
  throw UnsupportedOperation("projection is not available for the " + to_string(kind()) +
                             " polytope");
}

void PolytopeModel::check_dim(const Vec& v, const char* what) const {
  require_same_dim(static_cast<std::size_t>(v.size()), dim_, what);
}

namespace {

Vec unit(std::size_t n, std::size_t i, double sign = 1.0) {
  Vec e = Vec::Zero(static_cast<Eigen::Index>(n));
  e(static_cast<Eigen::Index>(i)) = sign;
  return e;
}

void require_feasible(const PolytopeModel& p, const Vec& x, double tol) {
  if (!p.contains(x, tol)) {
    throw InfeasiblePoint("caratheodory: point outside the " + to_string(p.kind()) + " polytope");
  }
}

}  // namespace

// Unit simplex ---------------------------------------------------------------

UnitSimplex::UnitSimplex(std::size_t n) : PolytopeModel(n) {
  geometry_ = {std::sqrt(2.0), std::sqrt(2.0), 1.0, 1.0};
}

void UnitSimplex::lmo(const Vec& c, Vec& out, kernels::Exec exec) const {
  check_dim(c, "simplex lmo");
  const std::size_t i = kernels::argmin(as_span(c), exec);
  out.setZero(c.size());
  out(static_cast<Eigen::Index>(i)) = 1.0;
}

CaratheodoryRep UnitSimplex::caratheodory(const Vec& x, double tol) const {
  require_feasible(*this, x, tol);
  CaratheodoryRep rep{{}, dim()};
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) > 0.0) rep.atoms.push_back({unit(dim(), static_cast<std::size_t>(i)), x(i)});
  }
  return rep;
}

bool UnitSimplex::contains(const Vec& x, double tol) const {
  check_dim(x, "simplex contains");
  return x.minCoeff() >= -tol && std::abs(x.sum() - 1.0) <= tol;
}

bool UnitSimplex::is_vertex(const Vec& v, double tol) const {
  if (!contains(v, tol)) return false;
  return v.maxCoeff() >= 1.0 - tol;
}

Vec UnitSimplex::project(const Vec& z) const {
  check_dim(z, "simplex project");
  return project_simplex(z, 1.0);
}

// Hypercube ------------------------------------------------------------------

Hypercube::Hypercube(std::size_t n) : PolytopeModel(n) {
  const double root = std::sqrt(static_cast<double>(n));
  geometry_ = {root, root, 1.0, 1.0};
}

void Hypercube::lmo(const Vec& c, Vec& out, kernels::Exec exec) const {
  check_dim(c, "hypercube lmo");
  out.resize(c.size());
  kernels::negative_indicator(as_span(c), as_span(out), exec);
}

CaratheodoryRep Hypercube::caratheodory(const Vec& x, double tol) const {
  require_feasible(*this, x, tol);
  const std::size_t n = dim();
  const Vec y = x.cwiseMax(0.0).cwiseMin(1.0);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return y(a) > y(b); });

  // x = (1 - y_(1)) * 0 + sum_j (y_(j) - y_(j+1)) * 1_{top j}.
  CaratheodoryRep rep{{}, n};
  const double first = y(static_cast<Eigen::Index>(order[0]));
  if (1.0 - first > 0.0) rep.atoms.push_back({Vec::Zero(static_cast<Eigen::Index>(n)), 1.0 - first});
  Vec staircase = Vec::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    staircase(static_cast<Eigen::Index>(order[j])) = 1.0;
    const double cur = y(static_cast<Eigen::Index>(order[j]));
    const double next = j + 1 < n ? y(static_cast<Eigen::Index>(order[j + 1])) : 0.0;
    if (cur - next > 0.0) rep.atoms.push_back({staircase, cur - next});
  }
  return rep;
}

bool Hypercube::contains(const Vec& x, double tol) const {
  check_dim(x, "hypercube contains");
  return x.minCoeff() >= -tol && x.maxCoeff() <= 1.0 + tol;
}

bool Hypercube::is_vertex(const Vec& v, double tol) const {
  check_dim(v, "hypercube is_vertex");
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > tol && std::abs(v(i) - 1.0) > tol) return false;
  }
  return true;
}

Vec Hypercube::project(const Vec& z) const {
  check_dim(z, "hypercube project");
  Vec out(z.size());
  kernels::clamp_unit(as_span(z), as_span(out));
  return out;
}

// l1-ball --------------------------------------------------------------------

L1Ball::L1Ball(std::size_t n, std::optional<double> eta) : PolytopeModel(n) {
  const double nn = static_cast<double>(n);
  const double e = eta.value_or(nn);
  if (!(e >= 1.0 && e <= nn)) throw InvalidArgument("L1Ball: eta must lie in [1, n]");
  const double xi = 2.0 / std::sqrt(nn);
  geometry_ = {2.0, e, xi, e * xi / 2.0};
}

void L1Ball::lmo(const Vec& c, Vec& out, kernels::Exec exec) const {
  check_dim(c, "l1 lmo");
  const std::size_t i = kernels::argmax_abs(as_span(c), exec);
  out.setZero(c.size());
  // sign(0) counts as +, so c_i = 0 yields -e_i; any vertex is optimal then.
  out(static_cast<Eigen::Index>(i)) = c(static_cast<Eigen::Index>(i)) >= 0.0 ? -1.0 : 1.0;
}

CaratheodoryRep L1Ball::caratheodory(const Vec& x, double tol) const {
  require_feasible(*this, x, tol);
  const std::size_t n = dim();
  const double slack = std::max(0.0, (1.0 - x.lpNorm<1>()) / 2.0);
  auto sgn = [](double v) { return v >= 0.0 ? 1.0 : -1.0; };

  CaratheodoryRep rep{{}, n};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double xi = x(static_cast<Eigen::Index>(i));
    if (xi != 0.0) rep.atoms.push_back({unit(n, i, sgn(xi)), std::abs(xi)});
  }
  const double last = x(static_cast<Eigen::Index>(n - 1));
  if (std::abs(last) + slack > 0.0) {
    rep.atoms.push_back({unit(n, n - 1, sgn(last)), std::abs(last) + slack});
  }
  if (slack > 0.0) rep.atoms.push_back({unit(n, n - 1, -sgn(last)), slack});
  return rep;
}

bool L1Ball::contains(const Vec& x, double tol) const {
  check_dim(x, "l1 contains");
  return x.lpNorm<1>() <= 1.0 + tol;
}

bool L1Ball::is_vertex(const Vec& v, double tol) const {
  check_dim(v, "l1 is_vertex");
  std::size_t big = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(std::abs(v(i)) - 1.0) <= tol) {
      ++big;
    } else if (std::abs(v(i)) > tol) {
      return false;
    }
  }
  return big == 1;
}

Vec L1Ball::project(const Vec& z) const {
  check_dim(z, "l1 project");
  if (z.lpNorm<1>() <= 1.0) return z;
  const Vec mag = project_simplex(z.cwiseAbs(), 1.0);
  Vec out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) out(i) = z(i) >= 0.0 ? mag(i) : -mag(i);
  return out;
}

// Flow polytope --------------------------------------------------------------

FlowPolytope::FlowPolytope(DagFlowNetwork network, std::optional<double> eta)
    : PolytopeModel(network.num_edges()), network_(std::move(network)) {
  // Two paths with at most L edges each differ in at most 2L coordinates.
  const double len = static_cast<double>(network_.longest_path_edges());
  const double d = std::sqrt(std::min(2.0 * len, static_cast<double>(dim())));
  const double e = eta.value_or(d);
  if (!(e > 0.0) || !std::isfinite(e)) throw InvalidArgument("FlowPolytope: eta must be positive");
  geometry_ = {d, e, 1.0, 1.0};
}

void FlowPolytope::lmo(const Vec& c, Vec& out, kernels::Exec) const {
  check_dim(c, "flow lmo");
  const auto& edges = network_.edges();
  const auto& topo = network_.topological_order();
  constexpr double inf = std::numeric_limits<double>::infinity();

  std::vector<double> to_target(network_.num_vertices(), inf);
  to_target[network_.target()] = 0.0;
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    for (std::size_t e : network_.out_edges(*it)) {
      const double cand = c(static_cast<Eigen::Index>(e)) + to_target[edges[e].head];
      if (cand < to_target[*it]) to_target[*it] = cand;
    }
  }

  out.setZero(c.size());
  std::size_t v = network_.source();
  while (v != network_.target()) {
    std::size_t chosen = edges.size();
    for (std::size_t e : network_.out_edges(v)) {
      if (c(static_cast<Eigen::Index>(e)) + to_target[edges[e].head] == to_target[v]) {
        chosen = e;
        break;
      }
    }
    if (chosen == edges.size()) throw NumericalFailure("flow lmo: non-finite edge weights");
    out(static_cast<Eigen::Index>(chosen)) = 1.0;
    v = edges[chosen].head;
  }
}

bool FlowPolytope::contains(const Vec& x, double tol) const {
  check_dim(x, "flow contains");
  if (x.minCoeff() < -tol || x.maxCoeff() > 1.0 + tol) return false;
  for (std::size_t v = 0; v < network_.num_vertices(); ++v) {
    double balance = 0.0;
    for (std::size_t e : network_.out_edges(v)) balance += x(static_cast<Eigen::Index>(e));
    for (std::size_t e : network_.in_edges(v)) balance -= x(static_cast<Eigen::Index>(e));
    double expected = 0.0;
    if (v == network_.source()) expected = 1.0;
    if (v == network_.target()) expected = -1.0;
    if (std::abs(balance - expected) > tol) return false;
  }
  return true;
}

bool FlowPolytope::is_vertex(const Vec& v, double tol) const {
  if (!contains(v, tol)) return false;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > tol && std::abs(v(i) - 1.0) > tol) return false;
  }
  return true;
}

PeelResult FlowPolytope::peel(const Vec& x, double tol) const {
  require_feasible(*this, x, tol);
  const auto& edges = network_.edges();
  const std::size_t m = edges.size();
  // Residual entries at or below this level count as removed.
  const double drop = 1e-14;
  Vec r = x.cwiseMax(0.0);
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (r(i) <= drop) r(i) = 0.0;
  }

  // First surviving edge in index order; falls back to the largest residual
  // when rounding has emptied every candidate.
  auto pick = [&](const std::vector<std::size_t>& cands) {
    std::size_t best = cands.front();
    for (std::size_t e : cands) {
      if (r(static_cast<Eigen::Index>(e)) > 0.0) return e;
      if (r(static_cast<Eigen::Index>(e)) > r(static_cast<Eigen::Index>(best))) best = e;
    }
    return best;
  };

  PeelResult result{{{}, m}, 0};
  std::vector<std::size_t> path;
  while (result.iterations < m) {
    std::size_t emin = m;
    for (std::size_t e = 0; e < m; ++e) {
      const double re = r(static_cast<Eigen::Index>(e));
      if (re > 0.0 && (emin == m || re < r(static_cast<Eigen::Index>(emin)))) emin = e;
    }
    if (emin == m) break;
    ++result.iterations;
    const double w = r(static_cast<Eigen::Index>(emin));

    path.assign(1, emin);
    for (std::size_t v = edges[emin].tail; v != network_.source();) {
      const std::size_t e = pick(network_.in_edges(v));
      path.push_back(e);
      v = edges[e].tail;
    }
    for (std::size_t v = edges[emin].head; v != network_.target();) {
      const std::size_t e = pick(network_.out_edges(v));
      path.push_back(e);
      v = edges[e].head;
    }

    Vec vertex = Vec::Zero(static_cast<Eigen::Index>(m));
    for (std::size_t e : path) {
      vertex(static_cast<Eigen::Index>(e)) = 1.0;
      double& re = r(static_cast<Eigen::Index>(e));
      re -= w;
      if (re <= drop) re = 0.0;
    }
    r(static_cast<Eigen::Index>(emin)) = 0.0;
    result.rep.atoms.push_back({std::move(vertex), w});
  }

  const double total = result.rep.weight_sum();
  if (!(total > 0.0)) throw NumericalFailure("flow peeling produced no paths");
  for (Atom& a : result.rep.atoms) a.weight /= total;
  return result;
}

CaratheodoryRep FlowPolytope::caratheodory(const Vec& x, double tol) const {
  return peel(x, tol).rep;
}

// ----------------------------------------------------------------------------

Vec project_simplex(const Vec& z, double radius) {
  if (z.size() == 0) throw InvalidArgument("project_simplex: empty input");
  std::vector<double> u(z.data(), z.data() + z.size());
  std::sort(u.begin(), u.end(), std::greater<>{});
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double t = (cumulative - radius) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  return (z.array() - theta).cwiseMax(0.0).matrix();
}

std::unique_ptr<PolytopeModel> make_polytope(PolytopeKind kind, std::size_t n,
                                             std::optional<double> eta) {
  switch (kind) {
    case PolytopeKind::simplex: return std::make_unique<UnitSimplex>(n);
    case PolytopeKind::hypercube: return std::make_unique<Hypercube>(n);
    case PolytopeKind::l1_ball: return std::make_unique<L1Ball>(n, eta);
    case PolytopeKind::flow: break;
  }
  throw InvalidArgument("make_polytope: flow polytopes need a network");
}

}  // namespace sfw
