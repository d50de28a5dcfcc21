#pragma once

#include "gsp/generators.hpp"
#include "gsp/graph.hpp"
#include "gsp/spectral.hpp"

#include <vector>

namespace gsp::test {

inline SpectralBasis laplacian_basis(const Graph& g) { return spectral_decompose(make_shift(g, ShiftKind::laplacian)); }

inline SpectralBasis laplacian_basis(const Graph& g, Index k) { return laplacian_basis(g).with_band(lowest_band(k)); }

/// Two disjoint K2 components: {0,1} and {2,3}.
inline Graph two_k2() {
  const std::vector<Edge> e{{0, 1, 1.0}, {2, 3, 1.0}};
  return Graph(4, e);
}

/// Star with center 0 and three leaves.
inline Graph star3() {
  const std::vector<Edge> e{{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}};
  return Graph(4, e);
}

inline double frob_dist(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

}  // namespace gsp::test
