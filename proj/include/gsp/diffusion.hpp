#pragma once

#include "gsp/adaptive.hpp"
#include "gsp/graph.hpp"
#include "gsp/spectral.hpp"
#include "gsp/types.hpp"

#include <cstdint>
#include <vector>

namespace gsp {

/// Connected undirected communication network over the processing vertices.
class CommGraph {
 public:
  /// Throws ConfigError if `graph` is not connected.
  explicit CommGraph(Graph graph);
  const Graph& graph() const noexcept { return graph_; }
  Index order() const noexcept { return graph_.order(); }

 private:
  Graph graph_;
};

/// Row-stochastic weights supported on N̄_i = N_i ∪ {i}.
class CombinationMatrix {
 public:
  /// Validates nonnegativity, row sums within 1e-12 and support.
  CombinationMatrix(const CommGraph& comm, Matrix weights);
  /// W = I: each node combines only with itself.
  static CombinationMatrix identity(const CommGraph& comm);

  const Matrix& weights() const noexcept { return w_; }
  Index order() const noexcept { return w_.rows(); }

 private:
  Matrix w_;
};

/// w_ij = 1/(1 + max(deg_i, deg_j)) on edges; the diagonal takes the rest.
CombinationMatrix metropolis_weights(const CommGraph& comm);

/// In-process exchange fabric. Each node owns one inbox slot per neighbor,
/// so concurrent senders never write the same slot and a round needs no
/// locking. send() rejects pairs that are not linked in the comm graph.
class MessageBus {
 public:
  MessageBus(const CommGraph& comm, Index payload_size);

  void begin_round();
  /// Puts `payload` into `to`'s slot for `from`.
  void send(Index from, Index to, const Vector& payload);
  const Vector& received(Index to, Index from) const;
  /// Closes the round and records its message count.
  void end_round();

  const std::vector<std::uint64_t>& round_counts() const noexcept { return counts_; }
  const std::vector<Index>& neighbors(Index v) const { return comm_->graph().neighbors(v); }

 private:
  std::size_t slot(Index to, Index from) const;

  const CommGraph* comm_;
  std::vector<std::vector<Vector>> inbox_;
  std::vector<std::uint64_t> sent_;  // per sender, current round
  std::vector<std::uint64_t> counts_;
};

struct NodeState {
  Vector s;    ///< local in-band coefficient estimate
  Vector psi;  ///< intermediate (adapted) estimate
  double mu = 0.0;
};

/// One synchronous round: adapt at every node, exchange ψ over the bus,
/// combine with W. Nodes are processed concurrently within each phase.
void diffusion_step(std::vector<NodeState>& nodes, const SpectralBasis& basis, const CombinationMatrix& w,
                    MessageBus& bus, const Vector& mask, const Vector& y);

namespace serial {
/// Same round computed directly from the dense W, without the bus.
void diffusion_step(std::vector<NodeState>& nodes, const SpectralBasis& basis, const CombinationMatrix& w,
                    const Vector& mask, const Vector& y);
}

/// Every node starts from s = 0 with step mu(i).
std::vector<NodeState> initial_nodes(const SpectralBasis& basis, const Vector& mu);

struct DiffusionResult {
  Matrix node_nmse;                   ///< iterations × n; node i's estimate is U_F s_i
  std::vector<double> network_nmse;   ///< row means of node_nmse
  double steady_state_nmse = 0.0;     ///< time average of network_nmse over the final 20%
  std::vector<std::uint64_t> messages_per_round;
  std::vector<NodeState> final_nodes;
};

/// Requires the adaptive recovery condition on the expected sampling set.
DiffusionResult diffusion_run(const SpectralBasis& basis, const CommGraph& comm, const CombinationMatrix& w,
                              const Vector& x_true, const ProbabilisticSampler& sampler, const NoiseModel& noise,
                              const Vector& mu, std::uint64_t iterations);

}  // namespace gsp
