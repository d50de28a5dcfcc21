#include "gsp/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gsp {

CommGraph::CommGraph(Graph graph) : graph_(std::move(graph)) {
  if (graph_.order() == 0) throw ConfigError("communication graph is empty");
  if (!graph_.connected()) throw ConfigError("communication graph must be connected");
}

CombinationMatrix::CombinationMatrix(const CommGraph& comm, Matrix weights) : w_(std::move(weights)) {
  const Index n = comm.order();
  if (w_.rows() != n || w_.cols() != n) throw DimensionError("combination matrix must be n x n");
  for (Index i = 0; i < n; ++i) {
    const auto& nb = comm.graph().neighbors(i);
    for (Index j = 0; j < n; ++j) {
      if (w_(i, j) < 0.0) throw ConfigError("combination weights must be nonnegative");
      if (i != j && w_(i, j) != 0.0 && !std::binary_search(nb.begin(), nb.end(), j)) {
        throw ConfigError("combination weight (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                          ") lies outside the communication graph");
      }
    }
    if (std::abs(w_.row(i).sum() - 1.0) > 1e-12) {
      throw ConfigError("combination matrix row " + std::to_string(i + 1) + " does not sum to 1");
    }
  }
}

CombinationMatrix CombinationMatrix::identity(const CommGraph& comm) {
  return CombinationMatrix(comm, Matrix::Identity(comm.order(), comm.order()));
}

CombinationMatrix metropolis_weights(const CommGraph& comm) {
  const Graph& g = comm.graph();
  const Index n = g.order();
  Matrix w = Matrix::Zero(n, n);
  for (const Edge& e : g.edges()) {
    const double v = 1.0 / (1.0 + static_cast<double>(std::max(g.degree(e.i), g.degree(e.j))));
    w(e.i, e.j) = v;
    w(e.j, e.i) = v;
  }
  for (Index i = 0; i < n; ++i) w(i, i) = 1.0 - (w.row(i).sum() - w(i, i));
  return CombinationMatrix(comm, std::move(w));
}

MessageBus::MessageBus(const CommGraph& comm, Index payload_size)
    : comm_(&comm), inbox_(static_cast<size_t>(comm.order())), sent_(static_cast<size_t>(comm.order()), 0) {
  for (Index v = 0; v < comm.order(); ++v) {
    inbox_[static_cast<size_t>(v)].assign(comm.graph().neighbors(v).size(), Vector::Zero(payload_size));
  }
}

std::size_t MessageBus::slot(Index to, Index from) const {
  const auto& nb = comm_->graph().neighbors(to);
  const auto it = std::lower_bound(nb.begin(), nb.end(), from);
  if (it == nb.end() || *it != from) {
    throw std::logic_error("message bus: vertices " + std::to_string(from + 1) + " and " + std::to_string(to + 1) +
                           " are not linked");
  }
  return static_cast<size_t>(it - nb.begin());
}

void MessageBus::begin_round() { std::fill(sent_.begin(), sent_.end(), 0); }

void MessageBus::send(Index from, Index to, const Vector& payload) {
  inbox_[static_cast<size_t>(to)][slot(to, from)] = payload;
  ++sent_[static_cast<size_t>(from)];
}

const Vector& MessageBus::received(Index to, Index from) const { return inbox_[static_cast<size_t>(to)][slot(to, from)]; }

void MessageBus::end_round() {
  std::uint64_t total = 0;
  for (auto c : sent_) total += c;
  counts_.push_back(total);
}

namespace {

void check_round(const std::vector<NodeState>& nodes, const SpectralBasis& basis, const CombinationMatrix& w,
                 const Vector& mask, const Vector& y) {
  const Index n = basis.order();
  require_size(static_cast<Index>(nodes.size()), n, "diffusion node count");
  require_size(w.order(), n, "combination matrix");
  require_size(mask.size(), n, "diffusion mask");
  require_size(y.size(), n, "diffusion observation");
}

// ψ_i = s_i + μ_i d_i u_{F,i} (y_i − u_{F,i}ᵀ s_i)
void adapt(NodeState& node, const SpectralBasis& basis, Index i, double d, double y) {
  const auto u = basis.band_vectors().row(i).transpose();
  node.psi = node.s;
  if (d != 0.0) node.psi += (node.mu * d * (y - u.dot(node.s))) * u;
}

}  // namespace

void diffusion_step(std::vector<NodeState>& nodes, const SpectralBasis& basis, const CombinationMatrix& w,
                    MessageBus& bus, const Vector& mask, const Vector& y) {
  check_round(nodes, basis, w, mask, y);
  const Index n = basis.order();
  const Matrix& wm = w.weights();

#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) adapt(nodes[static_cast<size_t>(i)], basis, i, mask(i), y(i));

  bus.begin_round();
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    for (Index j : bus.neighbors(i)) bus.send(i, j, nodes[static_cast<size_t>(i)].psi);
  }
  bus.end_round();

#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    NodeState& node = nodes[static_cast<size_t>(i)];
    Vector s = wm(i, i) * node.psi;
    for (Index j : bus.neighbors(i)) s += wm(i, j) * bus.received(i, j);
    node.s = std::move(s);
  }
}

namespace serial {

void diffusion_step(std::vector<NodeState>& nodes, const SpectralBasis& basis, const CombinationMatrix& w,
                    const Vector& mask, const Vector& y) {
  check_round(nodes, basis, w, mask, y);
  const Index n = basis.order();
  for (Index i = 0; i < n; ++i) adapt(nodes[static_cast<size_t>(i)], basis, i, mask(i), y(i));
  for (Index i = 0; i < n; ++i) {
    Vector s = Vector::Zero(basis.bandwidth());
    for (Index j = 0; j < n; ++j)
      if (w.weights()(i, j) != 0.0) s += w.weights()(i, j) * nodes[static_cast<size_t>(j)].psi;
    nodes[static_cast<size_t>(i)].s = std::move(s);
  }
}

}  // namespace serial

std::vector<NodeState> initial_nodes(const SpectralBasis& basis, const Vector& mu) {
  require_size(mu.size(), basis.order(), "diffusion step sizes");
  std::vector<NodeState> nodes(static_cast<size_t>(basis.order()));
  for (Index i = 0; i < basis.order(); ++i) {
    if (!(mu(i) > 0.0)) throw ConfigError("diffusion step size at node " + std::to_string(i + 1) + " must be positive");
    nodes[static_cast<size_t>(i)] = {Vector::Zero(basis.bandwidth()), Vector::Zero(basis.bandwidth()), mu(i)};
  }
  return nodes;
}

DiffusionResult diffusion_run(const SpectralBasis& basis, const CommGraph& comm, const CombinationMatrix& w,
                              const Vector& x_true, const ProbabilisticSampler& sampler, const NoiseModel& noise,
                              const Vector& mu, std::uint64_t iterations) {
  require_size(comm.order(), basis.order(), "communication graph");
  require_size(x_true.size(), basis.order(), "diffusion truth");
  const AdaptiveCondition cond = adaptive_recovery_condition(basis, sampler);
  if (!cond.ok) {
    throw ConfigError("diffusion_run: expected sampling set fails the recovery condition (norm " +
                      std::to_string(cond.norm) + ")");
  }
  if (iterations < 1) throw ConfigError("diffusion_run: need at least one iteration");
  const double signal = x_true.squaredNorm();
  if (!(signal > 0.0)) throw ConfigError("diffusion_run: NMSE needs a nonzero signal");

  const Index n = basis.order();
  const Matrix& uf = basis.band_vectors();
  DiffusionResult out;
  out.node_nmse.resize(static_cast<Index>(iterations), n);
  out.network_nmse.reserve(static_cast<size_t>(iterations));
  std::vector<NodeState> nodes = initial_nodes(basis, mu);
  MessageBus bus(comm, basis.bandwidth());

  for (std::uint64_t t = 0; t < iterations; ++t) {
    const Observation obs = observe(x_true, sampler, noise, t);
    diffusion_step(nodes, basis, w, bus, obs.mask, obs.y);
    const Index row = static_cast<Index>(t);
    for (Index i = 0; i < n; ++i) {
      out.node_nmse(row, i) = (uf * nodes[static_cast<size_t>(i)].s - x_true).squaredNorm() / signal;
    }
    out.network_nmse.push_back(out.node_nmse.row(row).mean());
  }

  const size_t len = std::max<size_t>(1, static_cast<size_t>(iterations) / 5);
  double tail = 0.0;
  for (size_t t = out.network_nmse.size() - len; t < out.network_nmse.size(); ++t) tail += out.network_nmse[t];
  out.steady_state_nmse = tail / static_cast<double>(len);
  out.messages_per_round = bus.round_counts();
  out.final_nodes = std::move(nodes);
  return out;
}

}  // namespace gsp
