#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sfw/polytope.hpp"
#include "sfw/types.hpp"

namespace sfw {

/// Weighted set of polytope vertices whose combination is the current iterate.
class ActiveSet {
 public:
  explicit ActiveSet(std::size_t dim, double drop_tol = 1e-12);
  static ActiveSet from_rep(const CaratheodoryRep& rep, double drop_tol = 1e-12);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vertices_.size(); }
  const Vec& vertex(std::size_t i) const { return vertices_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  double weight_sum() const;

  /// Index of an identical vertex, or size() when absent.
  std::size_t find(const Vec& v) const;
  /// Index of the atom maximizing <g, v>; ties go to the earliest atom.
  std::size_t away_index(const Vec& g) const;

  /// x <- (1 - t) x + t s
  void fw_step(const Vec& s, double t);
  /// x <- (1 + t) x - t v_away
  void away_step(std::size_t away, double t);
  /// Moves mass t from atom away to vertex s.
  void pairwise_step(const Vec& s, std::size_t away, double t);

  Vec point() const;

 private:
  std::size_t add(const Vec& v, double w);
  void prune();

  std::size_t dim_;
  double drop_tol_;
  std::vector<Vec> vertices_;
  std::vector<double> weights_;
  std::vector<std::uint64_t> hashes_;
};

}  // namespace sfw
