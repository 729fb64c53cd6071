#include "sfw/active_set.hpp"

#include <cstring>
#include <functional>
#include <string_view>

namespace sfw {

namespace {

std::uint64_t hash_vertex(const Vec& v) {
  const std::string_view bytes(reinterpret_cast<const char*>(v.data()),
                               static_cast<std::size_t>(v.size()) * sizeof(double));
  return std::hash<std::string_view>{}(bytes);
}

}  // namespace

ActiveSet::ActiveSet(std::size_t dim, double drop_tol) : dim_(dim), drop_tol_(drop_tol) {}

ActiveSet ActiveSet::from_rep(const CaratheodoryRep& rep, double drop_tol) {
  ActiveSet s(rep.dim, drop_tol);
  for (const Atom& a : rep.atoms) s.add(a.vertex, a.weight);
  const double total = s.weight_sum();
  if (!(total > 0.0)) throw InvalidArgument("ActiveSet: empty representation");
  for (double& w : s.weights_) w /= total;
  s.prune();
  return s;
}

double ActiveSet::weight_sum() const {
  double total = 0.0;
  for (double w : weights_) total += w;
  return total;
}

std::size_t ActiveSet::find(const Vec& v) const {
  const std::uint64_t h = hash_vertex(v);
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (hashes_[i] == h && vertices_[i] == v) return i;
  }
  return vertices_.size();
}

std::size_t ActiveSet::away_index(const Vec& g) const {
  if (vertices_.empty()) throw InvalidArgument("ActiveSet: no atoms");
  std::size_t best = 0;
  double best_val = g.dot(vertices_[0]);
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    const double val = g.dot(vertices_[i]);
    if (val > best_val) {
      best_val = val;
      best = i;
    }
  }
  return best;
}

std::size_t ActiveSet::add(const Vec& v, double w) {
  const std::size_t i = find(v);
  if (i < vertices_.size()) {
    weights_[i] += w;
    return i;
  }
  vertices_.push_back(v);
  weights_.push_back(w);
  hashes_.push_back(hash_vertex(v));
  return vertices_.size() - 1;
}

void ActiveSet::fw_step(const Vec& s, double t) {
  if (t <= 0.0) return;
  for (double& w : weights_) w *= 1.0 - t;
  add(s, t);
  prune();
}

void ActiveSet::away_step(std::size_t away, double t) {
  if (t <= 0.0) return;
  for (double& w : weights_) w *= 1.0 + t;
  weights_[away] -= t;
  prune();
}

void ActiveSet::pairwise_step(const Vec& s, std::size_t away, double t) {
  if (t <= 0.0) return;
  weights_[away] -= t;
  add(s, t);
  prune();
}

void ActiveSet::prune() {
  std::size_t out = 0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (weights_[i] > drop_tol_) {
      if (out != i) {
        vertices_[out] = std::move(vertices_[i]);
        weights_[out] = weights_[i];
        hashes_[out] = hashes_[i];
      }
      ++out;
    }
  }
  const bool dropped = out != vertices_.size();
  vertices_.resize(out);
  weights_.resize(out);
  hashes_.resize(out);
  if (dropped) {
    const double total = weight_sum();
    for (double& w : weights_) w /= total;
  }
}

Vec ActiveSet::point() const {
  Vec p = Vec::Zero(static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < vertices_.size(); ++i) p.noalias() += weights_[i] * vertices_[i];
  return p;
}

}  // namespace sfw
