#include "gsp/experiments.hpp"

#include "gsp/adaptive.hpp"
#include "gsp/diffusion.hpp"
#include "gsp/generators.hpp"
#include "gsp/recovery.hpp"
#include "gsp/rng.hpp"
#include "gsp/sampling.hpp"
#include "gsp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace gsp::experiments {

namespace {

using io::format_number;

constexpr std::uint64_t kSignalStream = 1;
constexpr std::uint64_t kNoiseStream = 2;
constexpr std::uint64_t kSamplerStream = 3;
constexpr std::uint64_t kSweepStream = 4;
constexpr std::uint64_t kCommStream = 5;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& field, const std::string& s) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("field '" + field + "': '" + s + "' is not a number");
}

std::uint64_t master_seed(const Config& cfg) { return cfg.get_seed("seed", 1); }

Graph load_graph(const Config& cfg, const std::string& key, const std::string& fallback, std::uint64_t seed) {
  if (cfg.has(key + "_file")) return io::read_edge_list(cfg.get_string(key + "_file", ""));
  const GraphSpec spec = GraphSpec::parse(cfg.get_string(key, fallback));
  return generate_graph(spec, cfg.get_seed(key + "_seed", seed));
}

ShiftKind parse_shift(const Config& cfg) {
  const std::string s = cfg.get_string("shift", "laplacian");
  if (s == "laplacian") return ShiftKind::laplacian;
  if (s == "adjacency") return ShiftKind::adjacency;
  throw ConfigError("field 'shift': expected laplacian or adjacency, got '" + s + "'");
}

std::vector<Index> parse_band(const std::string& text, Index n) {
  std::vector<Index> band;
  if (text.rfind("lowest:", 0) == 0) {
    const double k = to_double("band", text.substr(7));
    if (k < 1 || k > static_cast<double>(n) || k != std::floor(k)) {
      throw ConfigError("field 'band': lowest count must be an integer in [1, " + std::to_string(n) + "]");
    }
    return lowest_band(static_cast<Index>(k));
  }
  for (const auto& item : split(text, ',')) {
    const double v = to_double("band", item);
    if (v < 1 || v > static_cast<double>(n) || v != std::floor(v)) {
      throw ConfigError("field 'band': frequency index " + item + " outside 1.." + std::to_string(n));
    }
    band.push_back(static_cast<Index>(v) - 1);
  }
  return band;
}

struct Setup {
  Graph graph;
  SpectralBasis basis;
};

SpectralBasis decompose_graph(const Config& cfg, const Graph& g) {
  return spectral_decompose(make_shift(g, parse_shift(cfg)));
}

Setup setup(const Config& cfg, const std::string& default_graph, const std::string& default_band) {
  Graph g = load_graph(cfg, "graph", default_graph, master_seed(cfg));
  SpectralBasis full = decompose_graph(cfg, g);
  SpectralBasis basis = full.with_band(parse_band(cfg.get_string("band", default_band), g.order()));
  return {std::move(g), std::move(basis)};
}

Vector vertex_values(const std::string& field, const std::string& text, Index n, std::uint64_t seed) {
  const auto parts = split(text, ':');
  if (parts.size() == 2 && parts[0] == "uniform") return Vector::Constant(n, to_double(field, parts[1]));
  if (parts.size() == 3 && parts[0] == "random") {
    const double lo = to_double(field, parts[1]);
    const double hi = to_double(field, parts[2]);
    Rng rng(seed, kNoiseStream);
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = rng.uniform(lo, hi);
    return v;
  }
  if (parts.size() >= 2 && parts[0] == "file") return io::read_signal(text.substr(5), n);
  throw ConfigError("field '" + field + "': expected uniform:V, random:LO:HI or file:PATH, got '" + text + "'");
}

NoiseModel parse_noise(const Config& cfg, Index n, const std::string& fallback = "uniform:1") {
  NoiseModel noise{vertex_values("noise", cfg.get_string("noise", fallback), n, master_seed(cfg))};
  noise.validate();
  return noise;
}

Vector parse_probabilities(const Config& cfg, const std::string& key, Index n, const std::string& fallback) {
  Vector p = vertex_values(key, cfg.get_string(key, fallback), n, master_seed(cfg));
  for (Index i = 0; i < n; ++i) {
    if (!(p(i) >= 0.0 && p(i) <= 1.0)) throw ConfigError("field '" + key + "': probabilities must lie in [0, 1]");
  }
  return p;
}

Index parse_count(const Config& cfg, const std::string& key, std::int64_t fallback, Index lo, Index hi) {
  const std::int64_t v = cfg.get_int(key, fallback);
  if (v < lo || v > hi) {
    throw ConfigError("field '" + key + "': " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  return static_cast<Index>(v);
}

std::uint64_t parse_iterations(const Config& cfg, std::int64_t fallback) {
  const std::int64_t t = cfg.get_int("iterations", fallback);
  if (t < 1) throw ConfigError("field 'iterations': must be at least 1");
  return static_cast<std::uint64_t>(t);
}

double parse_positive(const Config& cfg, const std::string& key, double fallback) {
  const double v = cfg.get_double(key, fallback);
  if (!(v > 0.0)) throw ConfigError("field '" + key + "': must be positive");
  return v;
}

std::vector<Index> random_subset(Index n, Index m, Rng& rng) {
  std::vector<Index> pool(static_cast<size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  for (Index k = 0; k < m; ++k) {
    const auto j = k + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - k)));
    std::swap(pool[static_cast<size_t>(k)], pool[static_cast<size_t>(j)]);
  }
  pool.resize(static_cast<size_t>(m));
  return pool;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

std::string index_list(const std::vector<Index>& v) {
  std::string s;
  for (Index i : v) s += (s.empty() ? "" : " ") + std::to_string(i + 1);
  return s;
}

enum class Selector { greedy, exhaustive, relaxed };

Selector parse_selector(const std::string& field, const std::string& s) {
  if (s == "greedy") return Selector::greedy;
  if (s == "exhaustive") return Selector::exhaustive;
  if (s == "relaxed") return Selector::relaxed;
  throw ConfigError("field '" + field + "': expected greedy, exhaustive or relaxed, got '" + s + "'");
}

VertexSet choose(Selector sel, const DesignCriterion& c, const SpectralBasis& basis, Index m) {
  switch (sel) {
    case Selector::greedy: return greedy_select(c, basis, m);
    case Selector::exhaustive: return exhaustive_select(c, basis, m);
    case Selector::relaxed: return relaxed_select(c, basis, m).rounded;
  }
  throw ConfigError("unknown selector");
}

// Approximately bandlimited test signal: spectrum decaying as (1 + λ)^-smoothness.
Vector smooth_signal(const SpectralBasis& full, double smoothness, std::uint64_t seed) {
  Rng rng(seed, kSignalStream);
  Vector s(full.order());
  for (Index k = 0; k < s.size(); ++k) {
    s(k) = rng.normal() * std::pow(1.0 + std::abs(full.eigenvalues()(k)), -smoothness);
  }
  return full.eigenvectors() * s;
}

Vector gaussian_noise(const NoiseModel& noise, std::uint64_t seed) {
  Rng rng(seed, kNoiseStream);
  Vector v(noise.order());
  for (Index i = 0; i < v.size(); ++i) v(i) = std::sqrt(noise.variances(i)) * rng.normal();
  return v;
}

// ---- l1 corruption patterns ------------------------------------------------

std::vector<Index> clustered_pattern(const SpectralBasis& basis, const Graph& g, Index count) {
  Index peak = 0;
  basis.band_vectors().cwiseAbs().rowwise().maxCoeff().maxCoeff(&peak);
  const auto hops = g.hop_distances(peak);
  std::vector<Index> order(static_cast<size_t>(g.order()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    const Index ha = hops[static_cast<size_t>(a)] < 0 ? g.order() : hops[static_cast<size_t>(a)];
    const Index hb = hops[static_cast<size_t>(b)] < 0 ? g.order() : hops[static_cast<size_t>(b)];
    return ha < hb;
  });
  order.resize(static_cast<size_t>(count));
  return order;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"decompose", "select",  "recover",     "mse-curve", "l1-sweep",
                                                 "lms-run",   "design-p", "diffuse-run", "gen-graph"};
  return names;
}

bool known_command(const std::string& name) {
  const auto& c = commands();
  return std::find(c.begin(), c.end(), name) != c.end();
}

Output run(const std::string& command, const Config& cfg) {
  if (command == "decompose") return decompose(cfg);
  if (command == "select") return select(cfg);
  if (command == "recover") return recover(cfg);
  if (command == "mse-curve") return mse_curve(cfg);
  if (command == "l1-sweep") return l1_sweep(cfg);
  if (command == "lms-run") return lms_run(cfg);
  if (command == "design-p") return design_p(cfg);
  if (command == "diffuse-run") return diffuse_run(cfg);
  if (command == "gen-graph") return gen_graph(cfg);
  throw ConfigError("unknown command '" + command + "'");
}

Output decompose(const Config& cfg) {
  const Graph g = load_graph(cfg, "graph", "path:3", master_seed(cfg));
  const SpectralBasis basis = decompose_graph(cfg, g);
  const bool vectors = cfg.get_bool("vectors", false);
  Output out;
  if (vectors) {
    out.table.columns = {"index", "vertex", "value"};
    for (Index k = 0; k < basis.order(); ++k)
      for (Index i = 0; i < basis.order(); ++i)
        out.table.add({std::to_string(k + 1), std::to_string(i + 1), format_number(basis.eigenvectors()(i, k))});
  } else {
    out.table.columns = {"index", "eigenvalue"};
    io::Series s{"eigenvalue", {}, {}};
    for (Index k = 0; k < basis.order(); ++k) {
      out.table.add({std::to_string(k + 1), format_number(basis.eigenvalues()(k))});
      s.x.push_back(static_cast<double>(k + 1));
      s.y.push_back(basis.eigenvalues()(k));
    }
    out.plot = {s};
  }
  out.title = "graph spectrum";
  out.x_label = "index";
  out.y_label = "eigenvalue";
  return out;
}

Output select(const Config& cfg) {
  const Setup su = setup(cfg, "er:30:0.2", "lowest:5");
  const Index n = su.basis.order();
  const DesignCriterion crit{parse_criterion(cfg.get_string("criterion", "A")), parse_noise(cfg, n)};
  const Index m = parse_count(cfg, "samples", su.basis.bandwidth(), 1, n);
  const Selector sel = parse_selector("method", cfg.get_string("method", "greedy"));

  Output out;
  VertexSet chosen;
  if (sel == Selector::relaxed) {
    const RelaxedSelection r = relaxed_select(crit, su.basis, m);
    out.table.columns = {"vertex", "weight"};
    for (Index i = 0; i < n; ++i) out.table.add({std::to_string(i + 1), format_number(r.design.weights(i))});
    chosen = r.rounded;
    out.notes.push_back("relaxed iterations=" + std::to_string(r.design.iterations) +
                        " converged=" + (r.design.converged ? "true" : "false") +
                        " relaxed_objective=" + format_number(r.design.objective));
    out.notes.push_back("rounded set: " + index_list(chosen.members()));
  } else {
    std::vector<Index> order;
    if (sel == Selector::greedy) {
      order = greedy_sequence(crit, su.basis, m);
      chosen = VertexSet(n, order);
    } else {
      chosen = exhaustive_select(crit, su.basis, m, static_cast<std::uint64_t>(cfg.get_int("cap", 2'000'000)));
      order = chosen.members();
    }
    out.table.columns = {"rank", "vertex"};
    for (size_t k = 0; k < order.size(); ++k) out.table.add({std::to_string(k + 1), std::to_string(order[k] + 1)});
  }
  const RecoveryCondition rc = recovery_condition(su.basis, chosen);
  out.notes.push_back("objective=" + format_number(objective(crit, su.basis, chosen)) +
                      " recovery_norm=" + format_number(rc.norm) + " recoverable=" + (rc.ok ? "true" : "false"));
  return out;
}

Output recover(const Config& cfg) {
  const std::uint64_t seed = master_seed(cfg);
  const Graph g = load_graph(cfg, "graph", "er:30:0.2", seed);
  const SpectralBasis full = decompose_graph(cfg, g);
  const SpectralBasis basis = full.with_band(parse_band(cfg.get_string("band", "lowest:5"), g.order()));
  const Index n = basis.order();
  const std::string method = cfg.get_string("method", "consistent");

  Vector x;
  if (cfg.has("signal")) {
    x = io::read_signal(cfg.get_string("signal", ""), n);
  } else {
    x = synthesize_bandlimited(basis, derive_seed(seed, kSignalStream));
    const double mismatch = cfg.get_double("mismatch", 0.0);
    if (mismatch != 0.0) {
      Vector w = gaussian_noise(NoiseModel::uniform(n), derive_seed(seed, kSweepStream));
      w -= band_project(basis, w);
      x += mismatch * x.norm() / w.norm() * w;
    }
  }

  Output out;
  RecoveryReport rep;
  if (method == "l1") {
    const Index count = parse_count(cfg, "corrupt", 0, 0, n);
    const double amplitude = cfg.get_double("amplitude", 10.0);
    Rng rng(seed, kSweepStream);
    Vector y = x;
    for (Index v : random_subset(n, count, rng)) y(v) += amplitude * rng.normal();
    rep = l1_reconstruct(basis, y);
    out.notes.push_back("l1 iterations=" + std::to_string(rep.iterations) +
                        " converged=" + (rep.converged ? "true" : "false") +
                        " bound=" + format_number(l1_recovery_bound(basis)));
  } else {
    VertexSet s;
    if (cfg.has("sample_set")) {
      std::vector<Index> members;
      for (auto v : cfg.get_ints("sample_set", "")) members.push_back(static_cast<Index>(v) - 1);
      s = VertexSet(n, members);
    } else {
      const DesignCriterion crit{parse_criterion(cfg.get_string("criterion", "E")), parse_noise(cfg, n)};
      const Index m = parse_count(cfg, "samples", basis.bandwidth(), 1, n);
      s = choose(parse_selector("selector", cfg.get_string("selector", "greedy")), crit, basis, m);
    }
    ObservationBatch obs = ObservationBatch::sample(s, x);
    if (method == "blue" || cfg.get_bool("noisy", false)) {
      const NoiseModel noise = parse_noise(cfg, n);
      if (cfg.get_bool("noisy", false)) {
        const Vector v = gaussian_noise(noise, derive_seed(seed, kNoiseStream));
        for (Index k = 0; k < s.size(); ++k) obs.values(k) += v(s.members()[static_cast<size_t>(k)]);
      }
      obs.noise = noise;
    }
    if (method == "consistent") {
      rep = consistent_reconstruct(basis, obs);
    } else if (method == "blue") {
      rep = blue_reconstruct(basis, obs);
    } else {
      throw ConfigError("field 'method': expected consistent, blue or l1, got '" + method + "'");
    }
    out.notes.push_back("samples: " + index_list(s.members()));
  }
  out.table.columns = {"vertex", "value"};
  for (Index i = 0; i < n; ++i) out.table.add({std::to_string(i + 1), format_number(rep.x_hat(i))});
  std::string summary = "method=" + std::string(method_name(rep.method)) +
                        " nmse=" + format_number((rep.x_hat - x).squaredNorm() / x.squaredNorm()) +
                        " condition=" + format_number(rep.condition);
  if (rep.theoretical_mse) summary += " theoretical_mse=" + format_number(*rep.theoretical_mse);
  out.notes.push_back(summary);
  return out;
}

namespace {

struct Strategy {
  std::string name;
  bool random = false;
  CriterionKind kind = CriterionKind::a_optimal;
};

std::vector<Strategy> parse_strategies(const Config& cfg) {
  std::vector<Strategy> out;
  for (const auto& s : split(cfg.get_string("strategies", "A,E,D,random"), ',')) {
    if (s == "random") {
      out.push_back({s, true, CriterionKind::a_optimal});
    } else {
      out.push_back({s, false, parse_criterion(s)});
    }
  }
  if (out.empty()) throw ConfigError("field 'strategies': empty list");
  return out;
}

double mse_or_inf(const SpectralBasis& basis, const VertexSet& s, const NoiseModel& noise) {
  if (!recovery_condition(basis, s).ok) return std::numeric_limits<double>::infinity();
  return theoretical_mse(basis, s, noise);
}

double nmse_or_inf(const SpectralBasis& basis, const VertexSet& s, const std::vector<Vector>& signals) {
  if (!recovery_condition(basis, s).ok) return std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (const Vector& x : signals) {
    const RecoveryReport r = consistent_reconstruct(basis, ObservationBatch::sample(s, x));
    total += (r.x_hat - x).squaredNorm() / x.squaredNorm();
  }
  return total / static_cast<double>(signals.size());
}

Output samples_sweep(const Config& cfg) {
  const std::uint64_t seed = master_seed(cfg);
  const Setup su = setup(cfg, "er:40:0.2", "lowest:8");
  const Index n = su.basis.order();
  const NoiseModel noise = parse_noise(cfg, n);
  const auto strategies = parse_strategies(cfg);
  const Selector sel = parse_selector("method", cfg.get_string("method", "greedy"));
  const Index draws = parse_count(cfg, "random_draws", 200, 1, 1'000'000);
  std::vector<Index> counts;
  for (auto m : cfg.get_ints("samples", "8:20")) {
    if (m < su.basis.bandwidth() || m > n) throw ConfigError("field 'samples': counts must lie in [|F|, n]");
    counts.push_back(static_cast<Index>(m));
  }

  const Index points = static_cast<Index>(strategies.size() * counts.size());
  std::vector<double> value(static_cast<size_t>(points));
#pragma omp parallel for schedule(dynamic)
  for (Index pt = 0; pt < points; ++pt) {
    const Strategy& st = strategies[static_cast<size_t>(pt) / counts.size()];
    const Index m = counts[static_cast<size_t>(pt) % counts.size()];
    if (st.random) {
      Rng rng(derive_seed(seed, kSweepStream), static_cast<std::uint64_t>(m));
      std::vector<double> mses;
      for (Index d = 0; d < draws; ++d) mses.push_back(mse_or_inf(su.basis, VertexSet(n, random_subset(n, m, rng)), noise));
      value[static_cast<size_t>(pt)] = median(mses);
    } else {
      const VertexSet s = choose(sel, DesignCriterion{st.kind, noise}, su.basis, m);
      value[static_cast<size_t>(pt)] = mse_or_inf(su.basis, s, noise);
    }
  }

  Output out;
  out.table.columns = {"strategy", "samples", "mse"};
  for (size_t a = 0; a < strategies.size(); ++a) {
    io::Series series{strategies[a].name, {}, {}};
    for (size_t b = 0; b < counts.size(); ++b) {
      const double v = value[a * counts.size() + b];
      out.table.add({strategies[a].name, std::to_string(counts[b]), format_number(v)});
      series.x.push_back(static_cast<double>(counts[b]));
      series.y.push_back(v);
    }
    out.plot.push_back(series);
  }
  out.title = "MSE versus number of samples";
  out.x_label = "samples";
  out.y_label = "MSE";
  out.log_y = true;
  return out;
}

Output bandwidth_sweep(const Config& cfg) {
  const std::uint64_t seed = master_seed(cfg);
  const Graph g = load_graph(cfg, "graph", "er:40:0.2", seed);
  const SpectralBasis full = decompose_graph(cfg, g);
  const Index n = full.order();
  const NoiseModel noise = parse_noise(cfg, n);
  const auto strategies = parse_strategies(cfg);
  const Selector sel = parse_selector("method", cfg.get_string("method", "greedy"));
  const Index draws = parse_count(cfg, "random_draws", 200, 1, 1'000'000);
  const Index trials = parse_count(cfg, "trials", 20, 1, 1'000'000);
  const double smoothness = cfg.get_double("smoothness", 2.0);
  std::vector<Index> widths;
  for (auto k : cfg.get_ints("bandwidths", "2:12:2")) {
    if (k < 1 || k > n) throw ConfigError("field 'bandwidths': values must lie in [1, n]");
    widths.push_back(static_cast<Index>(k));
  }
  std::vector<Vector> signals;
  for (Index t = 0; t < trials; ++t) signals.push_back(smooth_signal(full, smoothness, derive_seed(seed, static_cast<std::uint64_t>(t))));

  const Index points = static_cast<Index>(strategies.size() * widths.size());
  std::vector<double> value(static_cast<size_t>(points));
#pragma omp parallel for schedule(dynamic)
  for (Index pt = 0; pt < points; ++pt) {
    const Strategy& st = strategies[static_cast<size_t>(pt) / widths.size()];
    const Index k = widths[static_cast<size_t>(pt) % widths.size()];
    const SpectralBasis basis = full.with_band(lowest_band(k));
    if (st.random) {
      Rng rng(derive_seed(seed, kSweepStream), static_cast<std::uint64_t>(k));
      std::vector<double> v;
      for (Index d = 0; d < draws; ++d) v.push_back(nmse_or_inf(basis, VertexSet(n, random_subset(n, k, rng)), signals));
      value[static_cast<size_t>(pt)] = median(v);
    } else {
      value[static_cast<size_t>(pt)] = nmse_or_inf(basis, choose(sel, DesignCriterion{st.kind, noise}, basis, k), signals);
    }
  }

  Output out;
  out.table.columns = {"strategy", "bandwidth", "nmse"};
  for (size_t a = 0; a < strategies.size(); ++a) {
    io::Series series{strategies[a].name, {}, {}};
    for (size_t b = 0; b < widths.size(); ++b) {
      const double v = value[a * widths.size() + b];
      out.table.add({strategies[a].name, std::to_string(widths[b]), format_number(v)});
      series.x.push_back(static_cast<double>(widths[b]));
      series.y.push_back(v);
    }
    out.plot.push_back(series);
  }
  out.title = "NMSE versus bandwidth";
  out.x_label = "bandwidth";
  out.y_label = "NMSE";
  out.log_y = true;
  return out;
}

}  // namespace

Output mse_curve(const Config& cfg) {
  const std::string sweep = cfg.get_string("sweep", "samples");
  if (sweep == "samples") return samples_sweep(cfg);
  if (sweep == "bandwidth") return bandwidth_sweep(cfg);
  throw ConfigError("field 'sweep': expected samples or bandwidth, got '" + sweep + "'");
}

Output l1_sweep(const Config& cfg) {
  const std::uint64_t seed = master_seed(cfg);
  const Graph g = load_graph(cfg, "graph", "er:40:0.2", seed);
  const SpectralBasis full = decompose_graph(cfg, g);
  const Index n = full.order();
  const Index trials = parse_count(cfg, "trials", 100, 1, 1'000'000);
  const double amplitude = cfg.get_double("amplitude", 10.0);
  const std::string pattern = cfg.get_string("pattern", "random");
  if (pattern != "random" && pattern != "clustered") {
    throw ConfigError("field 'pattern': expected random or clustered, got '" + pattern + "'");
  }
  std::vector<Index> widths, counts;
  for (auto k : cfg.get_ints("bandwidths", "2,4,6")) {
    if (k < 1 || k > n) throw ConfigError("field 'bandwidths': values must lie in [1, n]");
    widths.push_back(static_cast<Index>(k));
  }
  for (auto c : cfg.get_ints("counts", "0:20:2")) {
    if (c < 0 || c > n) throw ConfigError("field 'counts': values must lie in [0, n]");
    counts.push_back(static_cast<Index>(c));
  }

  const Index points = static_cast<Index>(widths.size() * counts.size());
  std::vector<double> value(static_cast<size_t>(points));
  std::vector<double> bounds(widths.size());
  for (size_t a = 0; a < widths.size(); ++a) bounds[a] = l1_recovery_bound(full.with_band(lowest_band(widths[a])));
#pragma omp parallel for schedule(dynamic)
  for (Index pt = 0; pt < points; ++pt) {
    const Index k = widths[static_cast<size_t>(pt) / counts.size()];
    const Index c = counts[static_cast<size_t>(pt) % counts.size()];
    const SpectralBasis basis = full.with_band(lowest_band(k));
    std::vector<double> nmse;
    for (Index t = 0; t < trials; ++t) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(pt)), static_cast<std::uint64_t>(t));
      const Vector x = synthesize_bandlimited(basis, rng.next_u64());
      const std::vector<Index> where = pattern == "random" ? random_subset(n, c, rng) : clustered_pattern(basis, g, c);
      Vector y = x;
      for (Index v : where) y(v) += amplitude * (pattern == "random" ? rng.normal() : 1.0);
      const RecoveryReport rep = l1_reconstruct(basis, y);
      nmse.push_back((rep.x_hat - x).squaredNorm() / x.squaredNorm());
    }
    value[static_cast<size_t>(pt)] = median(nmse);
  }

  Output out;
  out.table.columns = {"bandwidth", "noisy_count", "nmse"};
  for (size_t a = 0; a < widths.size(); ++a) {
    io::Series series{"|F|=" + std::to_string(widths[a]), {}, {}};
    for (size_t b = 0; b < counts.size(); ++b) {
      const double v = value[a * counts.size() + b];
      out.table.add({std::to_string(widths[a]), std::to_string(counts[b]), format_number(v)});
      series.x.push_back(static_cast<double>(counts[b]));
      series.y.push_back(std::max(v, 1e-30));
    }
    out.plot.push_back(series);
    out.notes.push_back("bandwidth=" + std::to_string(widths[a]) + " bound=" + format_number(bounds[a]));
  }
  out.title = "l1 reconstruction: NMSE versus number of noisy samples";
  out.x_label = "noisy samples";
  out.y_label = "NMSE";
  out.log_y = true;
  return out;
}

Output lms_run(const Config& cfg) {
  const std::uint64_t seed = master_seed(cfg);
  const Setup su = setup(cfg, "er:30:0.2", "lowest:5");
  const Index n = su.basis.order();
  const Vector p = parse_probabilities(cfg, "p", n, "uniform:0.5");
  const NoiseModel noise = parse_noise(cfg, n, "uniform:0.01");
  const double mu = parse_positive(cfg, "mu", 0.1);
  const std::uint64_t iterations = parse_iterations(cfg, 2000);
  const Index replicas = parse_count(cfg, "replicas", 1, 1, 100000);
  const std::int64_t switch_at = cfg.get_int("switch_at", 0);
  const Index every = parse_count(cfg, "every", 1, 1, 1'000'000'000);

  std::vector<TruthSegment> truth{{0, synthesize_bandlimited(su.basis, derive_seed(seed, kSignalStream))}};
  if (switch_at > 0) {
    truth.push_back({static_cast<std::uint64_t>(switch_at),
                     synthesize_bandlimited(su.basis, derive_seed(seed, kSignalStream + 100))});
  }
  std::vector<std::vector<double>> curves(static_cast<size_t>(replicas));
#pragma omp parallel for schedule(dynamic)
  for (Index r = 0; r < replicas; ++r) {
    const ProbabilisticSampler sampler(p, derive_seed(derive_seed(seed, kSamplerStream), static_cast<std::uint64_t>(r)));
    curves[static_cast<size_t>(r)] = gsp::lms_run(su.basis, truth, sampler, noise, mu, iterations).squared_error;
  }

  Output out;
  out.table.columns = {"iter", "mse"};
  io::Series series{"simulated", {}, {}};
  for (std::uint64_t t = 0; t < iterations; ++t) {
    if ((t + 1) % static_cast<std::uint64_t>(every) != 0 && t + 1 != iterations) continue;
    double v = 0.0;
    for (const auto& c : curves) v += c[t];
    v /= static_cast<double>(replicas);
    out.table.add({std::to_string(t + 1), format_number(v)});
    series.x.push_back(static_cast<double>(t + 1));
    series.y.push_back(v);
  }
  out.plot = {series};
  try {
    const LmsTheory th = lms_mse_theory(su.basis, p, noise, mu);
    const StepRange range = stable_step_range(su.basis, p);
    out.notes.push_back("theory mse=" + format_number(th.mse) + " alpha=" + format_number(th.alpha) +
                        " mu_max=" + format_number(range.mu_max));
  } catch (const std::exception& e) {
    out.notes.push_back(std::string("theory unavailable: ") + e.what());
  }
  out.title = "LMS learning curve";
  out.x_label = "iteration";
  out.y_label = "squared error";
  out.log_y = true;
  return out;
}

Output design_p(const Config& cfg) {
  const Setup su = setup(cfg, "er:30:0.2", "lowest:10");
  const Index n = su.basis.order();
  AdaptiveDesignSpec spec;
  spec.alpha_bar = cfg.get_double("alpha_bar", 0.98);
  spec.gamma = cfg.get_double("gamma", 1e-3);
  spec.mu = cfg.get_double("mu", 0.1);
  spec.noise = parse_noise(cfg, n, "random:0.0001:0.002");
  spec.p_max = parse_probabilities(cfg, "p_max", n, "uniform:1");
  const ProbabilityDesign d = design_probabilities(spec, su.basis);

  Output out;
  out.table.columns = {"vertex", "probability"};
  io::Series series{"p*", {}, {}};
  for (Index i = 0; i < n; ++i) {
    out.table.add({std::to_string(i + 1), format_number(d.p(i))});
    series.x.push_back(static_cast<double>(i + 1));
    series.y.push_back(d.p(i));
  }
  out.plot = {series};
  out.notes.push_back("total=" + format_number(d.total) + " lambda_min=" + format_number(d.lambda_min) +
                      " rate_floor=" + format_number(d.rate_floor) + " mse_bound=" + format_number(d.mse_bound) +
                      " mse=" + format_number(d.mse) + " alpha=" + format_number(d.alpha));
  out.title = "optimal sampling probabilities";
  out.x_label = "vertex";
  out.y_label = "probability";
  return out;
}

Output diffuse_run(const Config& cfg) {
  const std::uint64_t seed = master_seed(cfg);
  const Setup su = setup(cfg, "er:30:0.2", "lowest:5");
  const Index n = su.basis.order();
  const CommGraph comm(load_graph(cfg, "comm_graph", "er:" + std::to_string(n) + ":0.15", derive_seed(seed, kCommStream)));
  if (comm.order() != n) throw ConfigError("field 'comm_graph': order differs from the processing graph");
  const std::string weights = cfg.get_string("weights", "metropolis");
  CombinationMatrix w = weights == "metropolis" ? metropolis_weights(comm)
                        : weights == "identity" ? CombinationMatrix::identity(comm)
                                                : throw ConfigError("field 'weights': expected metropolis or identity");
  const Vector p = parse_probabilities(cfg, "p", n, "uniform:1");
  const NoiseModel noise = parse_noise(cfg, n, "uniform:0.01");
  const double mu_default = parse_positive(cfg, "mu", 0.5);
  Vector mu = Vector::Constant(n, mu_default);
  for (const auto& item : split(cfg.get_string("mu_overrides", ""), ',')) {
    if (item.empty()) continue;
    const auto parts = split(item, ':');
    if (parts.size() != 2) throw ConfigError("field 'mu_overrides': expected node:mu pairs");
    const double node = to_double("mu_overrides", parts[0]);
    if (node < 1 || node > static_cast<double>(n)) throw ConfigError("field 'mu_overrides': node out of range");
    mu(static_cast<Index>(node) - 1) = to_double("mu_overrides", parts[1]);
  }
  const std::uint64_t iterations = parse_iterations(cfg, 1000);
  const Index every = parse_count(cfg, "every", 10, 1, 1'000'000'000);

  const Vector x = synthesize_bandlimited(su.basis, derive_seed(seed, kSignalStream));
  const ProbabilisticSampler sampler(p, derive_seed(seed, kSamplerStream));
  const DiffusionResult res = diffusion_run(su.basis, comm, w, x, sampler, noise, mu, iterations);

  Output out;
  out.table.columns = {"iter", "node", "nmse"};
  io::Series series{"network average", {}, {}};
  for (std::uint64_t t = 0; t < iterations; ++t) {
    if ((t + 1) % static_cast<std::uint64_t>(every) != 0 && t + 1 != iterations) continue;
    for (Index i = 0; i < n; ++i) {
      out.table.add({std::to_string(t + 1), std::to_string(i + 1), format_number(res.node_nmse(static_cast<Index>(t), i))});
    }
    series.x.push_back(static_cast<double>(t + 1));
    series.y.push_back(res.network_nmse[static_cast<size_t>(t)]);
  }
  out.table.add({"steady_state", "all", format_number(res.steady_state_nmse)});
  out.plot = {series};
  out.notes.push_back("comm_edges=" + std::to_string(comm.graph().edge_count()) +
                      " messages_per_round=" + std::to_string(res.messages_per_round.front()));
  out.title = "diffusion LMS: network NMSE";
  out.x_label = "iteration";
  out.y_label = "NMSE";
  out.log_y = true;
  return out;
}

Output gen_graph(const Config& cfg) {
  const Graph g = load_graph(cfg, "graph", "er:30:0.2", master_seed(cfg));
  std::ostringstream os;
  io::write_edge_list(os, g);
  Output out;
  out.notes.push_back("vertices=" + std::to_string(g.order()) + " edges=" + std::to_string(g.edge_count()));
  out.text = os.str();
  return out;
}

}  // namespace gsp::experiments
