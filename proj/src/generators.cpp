#include "gsp/generators.hpp"

#include "gsp/rng.hpp"

#include <charconv>
#include <sstream>
#include <string>
#include <vector>

namespace gsp {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    const size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

Index parse_order(std::string_view s, std::string_view text) {
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || v < 1) {
    throw ConfigError("graph spec '" + std::string(text) + "': '" + std::string(s) + "' is not a positive order");
  }
  return static_cast<Index>(v);
}

double parse_probability(std::string_view s, std::string_view text) {
  double v = 0.0;
  try {
    size_t used = 0;
    v = std::stod(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ConfigError("graph spec '" + std::string(text) + "': '" + std::string(s) + "' is not a number");
  }
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ConfigError("graph spec '" + std::string(text) + "': probability " + std::string(s) + " outside [0, 1]");
  }
  return v;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

template <class Draw>
Graph connected_draw(Index n, std::uint64_t seed, const char* what, Draw draw) {
  for (int attempt = 0; attempt < kMaxRegenerations; ++attempt) {
    Rng rng(seed, static_cast<std::uint64_t>(attempt));
    std::vector<Edge> edges;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        if (rng.bernoulli(draw(i, j))) edges.push_back({i, j, 1.0});
    Graph g(n, edges);
    if (g.connected()) return g;
  }
  throw ConfigError(std::string(what) + ": no connected draw in " + std::to_string(kMaxRegenerations) + " attempts");
}

}  // namespace

GraphSpec GraphSpec::parse(std::string_view text) {
  const auto parts = split(text, ':');
  GraphSpec spec;
  const std::string_view kind = parts.front();
  auto expect = [&](size_t count) {
    if (parts.size() != count) {
      throw ConfigError("graph spec '" + std::string(text) + "': expected " + std::to_string(count - 1) +
                        " parameters after '" + std::string(kind) + "'");
    }
  };
  if (kind == "er" || kind == "erdos_renyi") {
    expect(3);
    spec.kind = Kind::erdos_renyi;
    spec.n = parse_order(parts[1], text);
    spec.prob = parse_probability(parts[2], text);
  } else if (kind == "path") {
    expect(2);
    spec.kind = Kind::path;
    spec.n = parse_order(parts[1], text);
  } else if (kind == "complete") {
    expect(2);
    spec.kind = Kind::complete;
    spec.n = parse_order(parts[1], text);
  } else if (kind == "two_block") {
    expect(5);
    spec.kind = Kind::two_block;
    spec.n1 = parse_order(parts[1], text);
    spec.n2 = parse_order(parts[2], text);
    spec.n = spec.n1 + spec.n2;
    spec.p_in = parse_probability(parts[3], text);
    spec.p_out = parse_probability(parts[4], text);
  } else {
    throw ConfigError("graph spec '" + std::string(text) + "': unknown generator '" + std::string(kind) + "'");
  }
  return spec;
}

std::string GraphSpec::to_string() const {
  switch (kind) {
    case Kind::erdos_renyi: return "er:" + std::to_string(n) + ":" + fmt(prob);
    case Kind::path: return "path:" + std::to_string(n);
    case Kind::complete: return "complete:" + std::to_string(n);
    case Kind::two_block:
      return "two_block:" + std::to_string(n1) + ":" + std::to_string(n2) + ":" + fmt(p_in) + ":" + fmt(p_out);
  }
  return "?";
}

Graph path_graph(Index n) {
  std::vector<Edge> edges;
  for (Index i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Graph(n, edges);
}

Graph complete_graph(Index n) {
  std::vector<Edge> edges;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  return Graph(n, edges);
}

Graph erdos_renyi(Index n, double prob, std::uint64_t seed) {
  return connected_draw(n, seed, "erdos_renyi", [prob](Index, Index) { return prob; });
}

Graph two_block(Index n1, Index n2, double p_in, double p_out, std::uint64_t seed) {
  return connected_draw(n1 + n2, seed, "two_block",
                        [=](Index i, Index j) { return (i < n1) == (j < n1) ? p_in : p_out; });
}

Graph generate_graph(const GraphSpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case GraphSpec::Kind::erdos_renyi: return erdos_renyi(spec.n, spec.prob, seed);
    case GraphSpec::Kind::path: return path_graph(spec.n);
    case GraphSpec::Kind::complete: return complete_graph(spec.n);
    case GraphSpec::Kind::two_block: return two_block(spec.n1, spec.n2, spec.p_in, spec.p_out, seed);
  }
  throw ConfigError("unknown graph generator");
}

}  // namespace gsp
