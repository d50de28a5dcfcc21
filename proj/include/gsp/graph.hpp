#pragma once

#include "gsp/types.hpp"

#include <span>
#include <vector>

namespace gsp {

struct Edge {
  Index i = 0;
  Index j = 0;
  double weight = 1.0;
};

/// Undirected weighted graph on vertices 0..n-1.
///
/// Each undirected edge is stored once with i < j. Input may list an edge in
/// either orientation or in both; both orientations must then agree on the
/// weight. Weights are strictly positive and self-loops are rejected.
class Graph {
 public:
  Graph() = default;
  Graph(Index order, std::span<const Edge> edges);

  Index order() const noexcept { return order_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  Index edge_count() const noexcept { return static_cast<Index>(edges_.size()); }

  /// Sorted neighbor list of v.
  const std::vector<Index>& neighbors(Index v) const { return neighbors_.at(static_cast<size_t>(v)); }
  Index degree(Index v) const { return static_cast<Index>(neighbors(v).size()); }

  Matrix adjacency() const;
  /// L = diag(1ᵀA) − A.
  Matrix laplacian() const;

  bool connected() const;
  /// BFS hop counts from `source`; -1 for unreachable vertices.
  std::vector<Index> hop_distances(Index source) const;

 private:
  Index order_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Index>> neighbors_;
};

enum class ShiftKind { adjacency, laplacian };

struct ShiftOperator {
  ShiftKind kind = ShiftKind::laplacian;
  Matrix matrix;
};

ShiftOperator make_shift(const Graph& graph, ShiftKind kind);

}  // namespace gsp
