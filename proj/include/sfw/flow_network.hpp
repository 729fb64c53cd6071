#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "sfw/types.hpp"

namespace sfw {

struct Edge {
  std::size_t tail = 0;
  std::size_t head = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed acyclic s-t network; edge i is coordinate i of a flow vector.
///
/// Construction rejects cycles, unreachable targets and edges that lie on no
/// s-t path (their coordinate would be identically zero).
class DagFlowNetwork {
 public:
  DagFlowNetwork(std::size_t num_vertices, std::vector<Edge> edges, std::size_t source,
                 std::size_t target);

  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t source() const { return source_; }
  std::size_t target() const { return target_; }

  /// Edge indices leaving / entering a vertex, ascending.
  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }
  const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_[v]; }
  const std::vector<std::size_t>& topological_order() const { return topo_; }

  /// Number of edges on the longest s-t path.
  std::size_t longest_path_edges() const { return longest_path_; }

  /// Text format: "V E s t" then E lines "tail head", 0-indexed.
  static DagFlowNetwork read(std::istream& in);
  static DagFlowNetwork load(const std::filesystem::path& path);
  void write(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;

 private:
  std::size_t num_vertices_;
  std::vector<Edge> edges_;
  std::size_t source_;
  std::size_t target_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::size_t> topo_;
  std::size_t longest_path_ = 0;
};

/// Layered DAG: source -> layer 0 -> ... -> layer L-1 -> target. Consecutive
/// layers are joined with probability edge_prob, with at least one incoming
/// and one outgoing edge per layer vertex so every edge is on an s-t path.
DagFlowNetwork make_layered_dag(std::size_t layers, std::size_t width, double edge_prob,
                                std::uint64_t seed);

}  // namespace sfw
