#include "sfw/flow_network.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <random>
#include <string>

namespace sfw {

DagFlowNetwork::DagFlowNetwork(std::size_t num_vertices, std::vector<Edge> edges,
                               std::size_t source, std::size_t target)
    : num_vertices_(num_vertices),
      edges_(std::move(edges)),
      source_(source),
      target_(target),
      out_(num_vertices),
      in_(num_vertices) {
  if (num_vertices_ < 2) throw InvalidArgument("DagFlowNetwork: need at least two vertices");
  if (source_ >= num_vertices_ || target_ >= num_vertices_ || source_ == target_) {
    throw InvalidArgument("DagFlowNetwork: invalid source/target");
  }
  if (edges_.empty()) throw InvalidArgument("DagFlowNetwork: no edges");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.tail >= num_vertices_ || e.head >= num_vertices_ || e.tail == e.head) {
      throw InvalidArgument("DagFlowNetwork: invalid edge " + std::to_string(i));
    }
    out_[e.tail].push_back(i);
    in_[e.head].push_back(i);
  }

  // Kahn's algorithm; the smallest ready vertex goes first for determinism.
  std::vector<std::size_t> indegree(num_vertices_, 0);
  for (const Edge& e : edges_) ++indegree[e.head];
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < num_vertices_; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::make_heap(ready.begin(), ready.end(), std::greater<>{});
  while (!ready.empty()) {
    std::pop_heap(ready.begin(), ready.end(), std::greater<>{});
    const std::size_t v = ready.back();
    ready.pop_back();
    topo_.push_back(v);
    for (std::size_t ei : out_[v]) {
      if (--indegree[edges_[ei].head] == 0) {
        ready.push_back(edges_[ei].head);
        std::push_heap(ready.begin(), ready.end(), std::greater<>{});
      }
    }
  }
  if (topo_.size() != num_vertices_) throw InvalidArgument("DagFlowNetwork: graph has a cycle");

  std::vector<char> from_source(num_vertices_, 0);
  std::vector<char> to_target(num_vertices_, 0);
  from_source[source_] = 1;
  for (std::size_t v : topo_) {
    if (!from_source[v]) continue;
    for (std::size_t ei : out_[v]) from_source[edges_[ei].head] = 1;
  }
  to_target[target_] = 1;
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    for (std::size_t ei : out_[*it]) {
      if (to_target[edges_[ei].head]) to_target[*it] = 1;
    }
  }
  if (!from_source[target_]) throw InvalidArgument("DagFlowNetwork: no s-t path");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (!from_source[edges_[i].tail] || !to_target[edges_[i].head]) {
      throw InvalidArgument("DagFlowNetwork: edge " + std::to_string(i) +
                            " lies on no s-t path");
    }
  }

  std::vector<long long> longest(num_vertices_, -1);
  longest[source_] = 0;
  for (std::size_t v : topo_) {
    if (longest[v] < 0) continue;
    for (std::size_t ei : out_[v]) {
      longest[edges_[ei].head] = std::max(longest[edges_[ei].head], longest[v] + 1);
    }
  }
  longest_path_ = static_cast<std::size_t>(longest[target_]);
}

DagFlowNetwork DagFlowNetwork::read(std::istream& in) {
  std::size_t v = 0, e = 0, s = 0, t = 0;
  if (!(in >> v >> e >> s >> t)) throw InvalidArgument("DagFlowNetwork: malformed header");
  std::vector<Edge> edges(e);
  for (std::size_t i = 0; i < e; ++i) {
    if (!(in >> edges[i].tail >> edges[i].head)) {
      throw InvalidArgument("DagFlowNetwork: missing edge line " + std::to_string(i));
    }
  }
  return DagFlowNetwork(v, std::move(edges), s, t);
}

DagFlowNetwork DagFlowNetwork::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("DagFlowNetwork: cannot open " + path.string());
  return read(in);
}

void DagFlowNetwork::write(std::ostream& out) const {
  out << num_vertices_ << ' ' << edges_.size() << ' ' << source_ << ' ' << target_ << '\n';
  for (const Edge& e : edges_) out << e.tail << ' ' << e.head << '\n';
}

void DagFlowNetwork::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("DagFlowNetwork: cannot write " + path.string());
  write(out);
}

DagFlowNetwork make_layered_dag(std::size_t layers, std::size_t width, double edge_prob,
                                std::uint64_t seed) {
  if (layers == 0 || width == 0) throw InvalidArgument("make_layered_dag: empty layout");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    throw InvalidArgument("make_layered_dag: edge_prob outside [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(edge_prob);
  std::uniform_int_distribution<std::size_t> pick(0, width - 1);

  const std::size_t source = 0;
  const std::size_t target = layers * width + 1;
  auto node = [width](std::size_t layer, std::size_t k) { return 1 + layer * width + k; };

  std::vector<Edge> edges;
  for (std::size_t k = 0; k < width; ++k) edges.push_back({source, node(0, k)});
  for (std::size_t l = 0; l + 1 < layers; ++l) {
    std::vector<char> has_in(width, 0);
    for (std::size_t a = 0; a < width; ++a) {
      bool has_out = false;
      for (std::size_t b = 0; b < width; ++b) {
        if (coin(rng)) {
          edges.push_back({node(l, a), node(l + 1, b)});
          has_out = true;
          has_in[b] = 1;
        }
      }
      if (!has_out) {
        const std::size_t b = pick(rng);
        edges.push_back({node(l, a), node(l + 1, b)});
        has_in[b] = 1;
      }
    }
    for (std::size_t b = 0; b < width; ++b) {
      if (!has_in[b]) edges.push_back({node(l, pick(rng)), node(l + 1, b)});
    }
  }
  for (std::size_t k = 0; k < width; ++k) edges.push_back({node(layers - 1, k), target});
  return DagFlowNetwork(target + 1, std::move(edges), source, target);
}

}  // namespace sfw
