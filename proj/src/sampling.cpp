#include "gsp/sampling.hpp"

#include "gsp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace gsp {

NoiseModel NoiseModel::uniform(Index order, double variance) {
  return {Vector::Constant(order, variance)};
}

void NoiseModel::validate() const {
  for (Index i = 0; i < variances.size(); ++i) {
    if (!(variances(i) > 0.0) || !std::isfinite(variances(i))) {
      throw ConfigError("noise variance at vertex " + std::to_string(i + 1) + " must be positive");
    }
  }
}

CriterionKind parse_criterion(std::string_view name) {
  if (name == "A" || name == "a") return CriterionKind::a_optimal;
  if (name == "E" || name == "e") return CriterionKind::e_optimal;
  if (name == "D" || name == "d") return CriterionKind::d_optimal;
  throw ConfigError("criterion must be one of A, E, D (got '" + std::string(name) + "')");
}

std::string_view criterion_name(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::a_optimal: return "A";
    case CriterionKind::e_optimal: return "E";
    case CriterionKind::d_optimal: return "D";
  }
  return "?";
}

Matrix information_matrix(const SpectralBasis& basis, std::span<const Index> members, const NoiseModel& noise) {
  require_size(noise.order(), basis.order(), "noise model");
  const Matrix& uf = basis.band_vectors();
  Matrix g = Matrix::Zero(uf.cols(), uf.cols());
  for (Index v : members) {
    const auto row = uf.row(v);
    g.noalias() += row.transpose() * row / noise.variances(v);
  }
  return g;
}

namespace {

struct Spectrum {
  Index rank = 0;
  Vector kept;  // eigenvalues (A, D) or singular values (E) above threshold
};

Spectrum information_spectrum(const DesignCriterion& c, const SpectralBasis& basis, std::span<const Index> members) {
  Spectrum out;
  if (members.empty()) return out;
  Vector values;
  if (c.kind == CriterionKind::e_optimal) {
    values = linalg::singular_values(linalg::select_rows(basis.band_vectors(), members));
  } else {
    values = linalg::symmetric_eigenvalues(information_matrix(basis, members, c.noise));
  }
  const double top = values.size() ? values.maxCoeff() : 0.0;
  if (!(top > 0.0)) return out;
  const double cut = linalg::kRankTolerance * top;
  std::vector<double> kept;
  for (Index k = 0; k < values.size(); ++k)
    if (values(k) > cut) kept.push_back(values(k));
  out.rank = static_cast<Index>(kept.size());
  out.kept = Eigen::Map<Vector>(kept.data(), out.rank);
  return out;
}

double spectrum_value(CriterionKind kind, const Vector& kept) {
  if (kept.size() == 0) return 0.0;
  switch (kind) {
    case CriterionKind::a_optimal: return -kept.cwiseInverse().sum();
    case CriterionKind::d_optimal: return kept.array().log().sum();
    case CriterionKind::e_optimal: return kept.minCoeff();
  }
  return 0.0;
}

}  // namespace

double objective(const DesignCriterion& criterion, const SpectralBasis& basis, const VertexSet& s) {
  require_size(s.order(), basis.order(), "objective vertex set");
  if (s.empty()) throw ConfigError("objective: sampling set must be nonempty");
  const Spectrum sp = information_spectrum(criterion, basis, s.members());
  if (criterion.kind == CriterionKind::e_optimal && sp.rank < basis.bandwidth()) return 0.0;
  return spectrum_value(criterion.kind, sp.kept);
}

SetScore set_score(const DesignCriterion& criterion, const SpectralBasis& basis, std::span<const Index> members) {
  const Spectrum sp = information_spectrum(criterion, basis, members);
  return {sp.rank, spectrum_value(criterion.kind, sp.kept)};
}

bool better(const SetScore& a, const SetScore& b) {
  if (a.rank != b.rank) return a.rank > b.rank;
  const double tol = 1e-10 * std::max(1.0, std::abs(b.value));
  return a.value > b.value + tol;
}

std::uint64_t binomial(Index n, Index k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (Index i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

void check_budget(const DesignCriterion& criterion, const SpectralBasis& basis, Index m) {
  criterion.noise.validate();
  require_size(criterion.noise.order(), basis.order(), "noise model");
  if (m < 0 || m > basis.order()) {
    throw ConfigError("sample count M=" + std::to_string(m) + " must lie in [0, " + std::to_string(basis.order()) + "]");
  }
}

std::uint64_t candidate_count(Index n, Index m, std::uint64_t cap) {
  const std::uint64_t count = binomial(n, m);
  if (count > cap) {
    throw ConfigError("exhaustive search needs C(" + std::to_string(n) + ", " + std::to_string(m) +
                      ") candidates, above the cap of " + std::to_string(cap));
  }
  return count;
}

// Lexicographic rank -> combination of {0..n-1} of size m.
std::vector<Index> unrank_combination(std::uint64_t rank, Index n, Index m) {
  std::vector<Index> combo;
  combo.reserve(static_cast<size_t>(m));
  Index next = 0;
  for (Index slot = 0; slot < m; ++slot) {
    for (Index v = next;; ++v) {
      const std::uint64_t block = binomial(n - v - 1, m - slot - 1);
      if (rank < block) {
        combo.push_back(v);
        next = v + 1;
        break;
      }
      rank -= block;
    }
  }
  return combo;
}

bool next_combination(std::vector<Index>& combo, Index n) {
  const Index m = static_cast<Index>(combo.size());
  for (Index k = m - 1; k >= 0; --k) {
    auto& c = combo[static_cast<size_t>(k)];
    if (c < n - m + k) {
      ++c;
      for (Index j = k + 1; j < m; ++j) combo[static_cast<size_t>(j)] = combo[static_cast<size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

struct Candidate {
  SetScore score;
  std::vector<Index> members;
};

Candidate scan_range(const DesignCriterion& c, const SpectralBasis& basis, Index m, std::uint64_t first,
                     std::uint64_t count) {
  std::vector<Index> combo = unrank_combination(first, basis.order(), m);
  Candidate best{set_score(c, basis, combo), combo};
  for (std::uint64_t k = 1; k < count; ++k) {
    next_combination(combo, basis.order());
    const SetScore s = set_score(c, basis, combo);
    if (better(s, best.score)) best = {s, combo};
  }
  return best;
}

}  // namespace

VertexSet exhaustive_select(const DesignCriterion& criterion, const SpectralBasis& basis, Index m, std::uint64_t cap) {
  check_budget(criterion, basis, m);
  const Index n = basis.order();
  const std::uint64_t total = candidate_count(n, m, cap);
  if (m == 0) return VertexSet(n, {});

  // Block layout depends only on the candidate count, so the merge order and
  // hence the result are independent of the thread count.
  const std::uint64_t block = std::max<std::uint64_t>(256, total / 256 + 1);
  const std::uint64_t blocks = (total + block - 1) / block;
  std::vector<Candidate> partial(static_cast<size_t>(blocks));

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::uint64_t first = static_cast<std::uint64_t>(b) * block;
    const std::uint64_t count = std::min(block, total - first);
    partial[static_cast<size_t>(b)] = scan_range(criterion, basis, m, first, count);
  }

  Candidate best = partial.front();
  for (size_t b = 1; b < partial.size(); ++b)
    if (better(partial[b].score, best.score)) best = partial[b];
  return VertexSet(n, best.members);
}

VertexSet greedy_select(const DesignCriterion& criterion, const SpectralBasis& basis, Index m) {
  return VertexSet(basis.order(), greedy_sequence(criterion, basis, m));
}

std::vector<Index> greedy_sequence(const DesignCriterion& criterion, const SpectralBasis& basis, Index m) {
  check_budget(criterion, basis, m);
  const Index n = basis.order();
  std::vector<Index> chosen;
  std::vector<char> taken(static_cast<size_t>(n), 0);
  std::vector<SetScore> scores(static_cast<size_t>(n));

  while (static_cast<Index>(chosen.size()) < m) {
#pragma omp parallel for schedule(static)
    for (Index j = 0; j < n; ++j) {
      if (taken[static_cast<size_t>(j)]) continue;
      std::vector<Index> trial = chosen;
      trial.push_back(j);
      scores[static_cast<size_t>(j)] = set_score(criterion, basis, trial);
    }
    Index pick = -1;
    for (Index j = 0; j < n; ++j) {
      if (taken[static_cast<size_t>(j)]) continue;
      if (pick < 0 || better(scores[static_cast<size_t>(j)], scores[static_cast<size_t>(pick)])) pick = j;
    }
    chosen.push_back(pick);
    taken[static_cast<size_t>(pick)] = 1;
  }
  return chosen;
}

namespace serial {

VertexSet exhaustive_select(const DesignCriterion& criterion, const SpectralBasis& basis, Index m, std::uint64_t cap) {
  check_budget(criterion, basis, m);
  const Index n = basis.order();
  candidate_count(n, m, cap);
  if (m == 0) return VertexSet(n, {});
  std::vector<Index> combo(static_cast<size_t>(m));
  std::iota(combo.begin(), combo.end(), Index{0});
  std::vector<Index> best = combo;
  SetScore best_score = set_score(criterion, basis, combo);
  while (next_combination(combo, n)) {
    const SetScore s = set_score(criterion, basis, combo);
    if (better(s, best_score)) {
      best_score = s;
      best = combo;
    }
  }
  return VertexSet(n, best);
}

VertexSet greedy_select(const DesignCriterion& criterion, const SpectralBasis& basis, Index m) {
  check_budget(criterion, basis, m);
  const Index n = basis.order();
  VertexSet s(n, {});
  while (s.size() < m) {
    Index pick = -1;
    SetScore pick_score;
    for (Index j = 0; j < n; ++j) {
      if (s.contains(j)) continue;
      const VertexSet trial = s.with(j);
      const SetScore sc = set_score(criterion, basis, trial.members());
      if (pick < 0 || better(sc, pick_score)) {
        pick = j;
        pick_score = sc;
      }
    }
    s = s.with(pick);
  }
  return s;
}

}  // namespace serial

}  // namespace gsp
