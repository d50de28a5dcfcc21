#include "gsp/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <string>
#include <utility>

namespace gsp {

Graph::Graph(Index order, std::span<const Edge> edges) : order_(order) {
  if (order < 0) throw ConfigError("graph order must be nonnegative");
  std::map<std::pair<Index, Index>, double> merged;
  for (const Edge& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= order || e.j >= order) {
      throw ConfigError("edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                        ") out of range for " + std::to_string(order) + " vertices");
    }
    if (e.i == e.j) throw ConfigError("self-loop at vertex " + std::to_string(e.i));
    if (!(e.weight > 0.0)) throw ConfigError("edge weights must be strictly positive");
    const auto key = std::minmax(e.i, e.j);
    auto [it, inserted] = merged.emplace(key, e.weight);
    if (!inserted && it->second != e.weight) {
      throw ConfigError("conflicting weights for edge (" + std::to_string(key.first) + ", " +
                        std::to_string(key.second) + ")");
    }
  }
  neighbors_.assign(static_cast<size_t>(order), {});
  edges_.reserve(merged.size());
  for (const auto& [key, w] : merged) {
    edges_.push_back({key.first, key.second, w});
    neighbors_[static_cast<size_t>(key.first)].push_back(key.second);
    neighbors_[static_cast<size_t>(key.second)].push_back(key.first);
  }
  for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
}

Matrix Graph::adjacency() const {
  Matrix a = Matrix::Zero(order_, order_);
  for (const Edge& e : edges_) {
    a(e.i, e.j) = e.weight;
    a(e.j, e.i) = e.weight;
  }
  return a;
}

Matrix Graph::laplacian() const {
  Matrix l = Matrix::Zero(order_, order_);
  for (const Edge& e : edges_) {
    l(e.i, e.j) = -e.weight;
    l(e.j, e.i) = -e.weight;
    l(e.i, e.i) += e.weight;
    l(e.j, e.j) += e.weight;
  }
  return l;
}

std::vector<Index> Graph::hop_distances(Index source) const {
  std::vector<Index> dist(static_cast<size_t>(order_), -1);
  if (source < 0 || source >= order_) throw DimensionError("hop_distances: source out of range");
  std::queue<Index> frontier;
  dist[static_cast<size_t>(source)] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const Index v = frontier.front();
    frontier.pop();
    for (Index w : neighbors(v)) {
      if (dist[static_cast<size_t>(w)] < 0) {
        dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

bool Graph::connected() const {
  if (order_ <= 1) return true;
  const auto dist = hop_distances(0);
  return std::none_of(dist.begin(), dist.end(), [](Index d) { return d < 0; });
}

ShiftOperator make_shift(const Graph& graph, ShiftKind kind) {
  return {kind, kind == ShiftKind::adjacency ? graph.adjacency() : graph.laplacian()};
}

}  // namespace gsp
