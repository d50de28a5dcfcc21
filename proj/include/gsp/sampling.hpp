#pragma once

#include "gsp/spectral.hpp"
#include "gsp/types.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace gsp {

/// Diagonal observation-noise covariance R_v = diag(r_1², ..., r_n²).
struct NoiseModel {
  Vector variances;

  static NoiseModel uniform(Index order, double variance = 1.0);
  Index order() const noexcept { return variances.size(); }
  /// Throws ConfigError unless every variance is strictly positive.
  void validate() const;
};

enum class CriterionKind { a_optimal, e_optimal, d_optimal };

CriterionKind parse_criterion(std::string_view name);
std::string_view criterion_name(CriterionKind kind);

struct DesignCriterion {
  CriterionKind kind = CriterionKind::a_optimal;
  NoiseModel noise;
};

/// U_Fᵀ D_S R_v⁻¹ U_F
Matrix information_matrix(const SpectralBasis& basis, std::span<const Index> members, const NoiseModel& noise);

/// Set function f(S) (larger is better):
///   A: −Tr[(U_Fᵀ D_S R_v⁻¹ U_F)†]
///   E: σ_min(D_S U_F), zero while |S| < |F| or P_Sᵀ U_F is rank deficient
///   D: log pdet(U_Fᵀ D_S R_v⁻¹ U_F)
/// Pseudo-inverse and pseudo-determinant keep eigenvalues above 1e-10 λ_max.
double objective(const DesignCriterion& criterion, const SpectralBasis& basis, const VertexSet& s);

/// Ordering key used by the set selectors: compare rank of the information
/// matrix first, then the objective restricted to its range.
///
/// Below full rank the fallback objectives are not monotone in S (a rank
/// increase contributes a new small eigenvalue), so comparing raw values
/// would let a selector trade coverage for a smaller pseudo-trace. Ranking
/// first makes every criterion monotone under augmentation. For E the value
/// is the smallest nonzero singular value of P_Sᵀ U_F.
struct SetScore {
  Index rank = 0;
  double value = 0.0;
};

SetScore set_score(const DesignCriterion& criterion, const SpectralBasis& basis, std::span<const Index> members);

/// Strict improvement of `a` over `b`. Values within 1e-10 (relative)
/// compare equal so that symmetric candidates tie exactly.
bool better(const SetScore& a, const SetScore& b);

inline constexpr std::uint64_t kDefaultExhaustiveCap = 2'000'000;

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(Index n, Index k);

/// Best M-subset under `criterion` by enumeration; ties go to the
/// lexicographically smallest set. Candidate ranges are scored on OpenMP
/// threads and merged in enumeration order.
VertexSet exhaustive_select(const DesignCriterion& criterion, const SpectralBasis& basis, Index m,
                            std::uint64_t cap = kDefaultExhaustiveCap);

/// Greedy augmentation: M rounds, each adding the vertex with the best
/// score of S ∪ {j}; ties go to the lowest index. Candidates of a round are
/// scored concurrently.
VertexSet greedy_select(const DesignCriterion& criterion, const SpectralBasis& basis, Index m);
/// The greedy picks in the order they were made.
std::vector<Index> greedy_sequence(const DesignCriterion& criterion, const SpectralBasis& basis, Index m);

namespace serial {
VertexSet exhaustive_select(const DesignCriterion& criterion, const SpectralBasis& basis, Index m,
                            std::uint64_t cap = kDefaultExhaustiveCap);
VertexSet greedy_select(const DesignCriterion& criterion, const SpectralBasis& basis, Index m);
}  // namespace serial

// ---- convex relaxation over d ∈ [0,1]ⁿ, 1ᵀd = M -------------------------

struct RelaxOptions {
  int max_iterations = 5000;
  double step_tolerance = 1e-8;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  /// a in the a/√k subgradient schedule used for the E criterion.
  double subgradient_scale = 0.1;
};

struct RelaxedDesign {
  Vector weights;            ///< d*
  Index target = 0;          ///< M
  int iterations = 0;
  double objective = 0.0;    ///< relaxed f(d*), minimization form
  bool converged = false;
};

struct RelaxedSelection {
  RelaxedDesign design;
  VertexSet rounded;               ///< the M largest entries of d*
  double rounded_objective = 0.0;  ///< objective() of the rounded set
};

/// Minimization-form relaxed objective; +inf where the information matrix
/// is singular (A, D).
///   A: Tr[(U_Fᵀ diag(d) R_v⁻¹ U_F)⁻¹]   D: −log det(·)   E: −σ_min(diag(d) U_F)
double relaxed_objective(const DesignCriterion& criterion, const SpectralBasis& basis, const Vector& d);

/// Gradient of relaxed_objective (a subgradient for E).
Vector relaxed_gradient(const DesignCriterion& criterion, const SpectralBasis& basis, const Vector& d);

/// Euclidean projection onto {0 ≤ d ≤ 1, 1ᵀd = total}.
Vector project_capped_simplex(const Vector& v, double total);

RelaxedSelection relaxed_select(const DesignCriterion& criterion, const SpectralBasis& basis, Index m,
                                const RelaxOptions& options = {});

}  // namespace gsp
