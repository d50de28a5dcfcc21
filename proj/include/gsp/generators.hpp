#pragma once

#include "gsp/graph.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace gsp {

struct GraphSpec {
  enum class Kind { erdos_renyi, path, complete, two_block };
  Kind kind = Kind::path;
  Index n = 0;   ///< total order (n1 + n2 for two_block)
  Index n1 = 0;  ///< two_block only
  Index n2 = 0;
  double prob = 0.0;   ///< erdos_renyi edge probability
  double p_in = 0.0;   ///< two_block within-block probability
  double p_out = 0.0;  ///< two_block across-block probability

  /// Accepts `er:N:P`, `path:N`, `complete:N`, `two_block:N1:N2:PIN:POUT`.
  static GraphSpec parse(std::string_view text);
  std::string to_string() const;
  bool random() const noexcept { return kind == Kind::erdos_renyi || kind == Kind::two_block; }
};

inline constexpr int kMaxRegenerations = 100;

Graph path_graph(Index n);
Graph complete_graph(Index n);
/// Connected G(n, p); attempt a draws with stream derive_seed(seed, a).
/// Throws ConfigError after kMaxRegenerations disconnected draws.
Graph erdos_renyi(Index n, double prob, std::uint64_t seed);
/// Two communities of sizes n1, n2; connected, same retry policy.
Graph two_block(Index n1, Index n2, double p_in, double p_out, std::uint64_t seed);

Graph generate_graph(const GraphSpec& spec, std::uint64_t seed);

}  // namespace gsp
