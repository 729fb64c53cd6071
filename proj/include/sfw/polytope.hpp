#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sfw/flow_network.hpp"
#include "sfw/kernels.hpp"
#include "sfw/types.hpp"

namespace sfw {

enum class PolytopeKind { simplex, hypercube, l1_ball, flow };

std::string to_string(PolytopeKind kind);

/// Diameter D and condition number eta = psi * D / xi.
struct PolytopeGeometry {
  double diameter = 0.0;
  double eta = 0.0;
  std::optional<double> xi;
  std::optional<double> psi;
};

struct Atom {
  Vec vertex;
  double weight = 0.0;
};

/// Convex combination of polytope vertices with positive weights.
struct CaratheodoryRep {
  std::vector<Atom> atoms;
  std::size_t dim = 0;

  std::size_t size() const { return atoms.size(); }
  bool empty() const { return atoms.empty(); }
  Vec point() const;
  double weight_sum() const;
};

class PolytopeModel {
 public:
  explicit PolytopeModel(std::size_t dim);
  virtual ~PolytopeModel() = default;

  std::size_t dim() const { return dim_; }
  virtual PolytopeKind kind() const = 0;
  const PolytopeGeometry& geometry() const { return geometry_; }

  /// Writes a vertex minimizing <c, v> into out (resized as needed).
  virtual void lmo(const Vec& c, Vec& out, kernels::Exec exec = kernels::Exec::serial) const = 0;
  Vec lmo(const Vec& c, kernels::Exec exec = kernels::Exec::serial) const;

  /// Throws InfeasiblePoint when x lies outside the polytope beyond tol.
  virtual CaratheodoryRep caratheodory(const Vec& x, double tol = kDefaultTol) const = 0;

  virtual bool contains(const Vec& x, double tol = kDefaultTol) const = 0;
  virtual bool is_vertex(const Vec& v, double tol = kDefaultTol) const = 0;

  /// Euclidean projection; UnsupportedOperation where no cheap method exists.
  virtual Vec project(const Vec& z) const;

 protected:
  void check_dim(const Vec& v, const char* what) const;
  PolytopeGeometry geometry_;

 private:
  std::size_t dim_;
};

class UnitSimplex final : public PolytopeModel {
 public:
  explicit UnitSimplex(std::size_t n);
  PolytopeKind kind() const override { return PolytopeKind::simplex; }
  using PolytopeModel::lmo;
  void lmo(const Vec& c, Vec& out, kernels::Exec exec = kernels::Exec::serial) const override;
  CaratheodoryRep caratheodory(const Vec& x, double tol = kDefaultTol) const override;
  bool contains(const Vec& x, double tol = kDefaultTol) const override;
  bool is_vertex(const Vec& v, double tol = kDefaultTol) const override;
  Vec project(const Vec& z) const override;
};

/// [0, 1]^n
class Hypercube final : public PolytopeModel {
 public:
  explicit Hypercube(std::size_t n);
  PolytopeKind kind() const override { return PolytopeKind::hypercube; }
  using PolytopeModel::lmo;
  void lmo(const Vec& c, Vec& out, kernels::Exec exec = kernels::Exec::serial) const override;
  CaratheodoryRep caratheodory(const Vec& x, double tol = kDefaultTol) const override;
  bool contains(const Vec& x, double tol = kDefaultTol) const override;
  bool is_vertex(const Vec& v, double tol = kDefaultTol) const override;
  Vec project(const Vec& z) const override;
};

/// Unit l1-ball. eta defaults to n, the safe end of its admissible range.
class L1Ball final : public PolytopeModel {
 public:
  explicit L1Ball(std::size_t n, std::optional<double> eta = std::nullopt);
  PolytopeKind kind() const override { return PolytopeKind::l1_ball; }
  using PolytopeModel::lmo;
  void lmo(const Vec& c, Vec& out, kernels::Exec exec = kernels::Exec::serial) const override;
  CaratheodoryRep caratheodory(const Vec& x, double tol = kDefaultTol) const override;
  bool contains(const Vec& x, double tol = kDefaultTol) const override;
  bool is_vertex(const Vec& v, double tol = kDefaultTol) const override;
  Vec project(const Vec& z) const override;
};

struct PeelResult {
  CaratheodoryRep rep;
  std::size_t iterations = 0;
};

/// Unit s-t flows on a DAG; vertices are the s-t paths.
class FlowPolytope final : public PolytopeModel {
 public:
  explicit FlowPolytope(DagFlowNetwork network, std::optional<double> eta = std::nullopt);
  PolytopeKind kind() const override { return PolytopeKind::flow; }
  const DagFlowNetwork& network() const { return network_; }

  using PolytopeModel::lmo;
  /// Minimum-weight s-t path; among optimal paths the one whose edge index
  /// sequence is lexicographically smallest.
  void lmo(const Vec& c, Vec& out, kernels::Exec exec = kernels::Exec::serial) const override;
  CaratheodoryRep caratheodory(const Vec& x, double tol = kDefaultTol) const override;
  /// Path decomposition, also reporting the number of peeling rounds.
  PeelResult peel(const Vec& x, double tol = kDefaultTol) const;
  bool contains(const Vec& x, double tol = kDefaultTol) const override;
  bool is_vertex(const Vec& v, double tol = kDefaultTol) const override;

 private:
  DagFlowNetwork network_;
};

/// Sort-based Euclidean projection onto {x >= 0, sum x = radius}.
Vec project_simplex(const Vec& z, double radius = 1.0);

/// Polytope by family name ("simplex", "hypercube", "l1_ball"); flow polytopes
/// need a network and are built directly.
std::unique_ptr<PolytopeModel> make_polytope(PolytopeKind kind, std::size_t n,
                                             std::optional<double> eta = std::nullopt);
PolytopeKind parse_polytope_kind(const std::string& name);

}  // namespace sfw
