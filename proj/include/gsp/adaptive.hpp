#pragma once

#include "gsp/sampling.hpp"
#include "gsp/spectral.hpp"
#include "gsp/types.hpp"

#include <cstdint>
#include <vector>

namespace gsp {

/// Independent Bernoulli(p_i) sampling at every vertex and time step.
///
/// d_i[t] is draw t of stream (seed, i), so any (vertex, time) decision can
/// be evaluated directly and in any order.
class ProbabilisticSampler {
 public:
  /// Throws ConfigError unless 0 ≤ p ≤ p_max ≤ 1 componentwise.
  ProbabilisticSampler(Vector p, Vector p_max, std::uint64_t seed);
  ProbabilisticSampler(Vector p, std::uint64_t seed);
  static ProbabilisticSampler uniform(Index order, double p, std::uint64_t seed);

  Index order() const noexcept { return p_.size(); }
  const Vector& probabilities() const noexcept { return p_; }
  const Vector& caps() const noexcept { return p_max_; }
  std::uint64_t seed() const noexcept { return seed_; }
  ProbabilisticSampler reseeded(std::uint64_t seed) const { return {p_, p_max_, seed}; }

  /// S̄ = {i : p_i > 0}
  VertexSet expected_set() const;
  bool sampled(Index vertex, std::uint64_t t) const;
  /// diag of D_{S[t]} as a 0/1 vector.
  Vector mask(std::uint64_t t) const;

 private:
  Vector p_;
  Vector p_max_;
  std::uint64_t seed_;
};

struct Observation {
  Vector mask;  ///< d[t]
  Vector y;     ///< D_{S[t]} (x + v[t])
};

/// y[t] = D_{S[t]}(x + v[t]), v_i[t] ~ N(0, r_i²) drawn from a per-vertex
/// stream of the sampler seed. Zero variances are allowed here.
Observation observe(const Vector& x, const ProbabilisticSampler& sampler, const NoiseModel& noise, std::uint64_t t);

struct LmsState {
  Vector x_hat;
  double mu = 0.0;
  std::uint64_t iteration = 0;
};

/// x̂ ← x̂ + μ B_F D (y − x̂)
LmsState lms_step(const LmsState& state, const SpectralBasis& basis, const Vector& y, const Vector& mask);

struct AdaptiveCondition {
  bool ok = false;
  double norm = 1.0;  ///< ||D_S̄ᶜ U_F||_2
};

AdaptiveCondition adaptive_recovery_condition(const SpectralBasis& basis, const ProbabilisticSampler& sampler);

/// Spectrum of U_Fᵀ diag(p) U_F and the resulting stability limit
/// mu_max = 2 λ_min / λ_max².
struct StepRange {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double mu_max = 0.0;
};

/// Throws NumericalError when U_Fᵀ diag(p) U_F is singular.
StepRange stable_step_range(const SpectralBasis& basis, const Vector& p);

struct LmsTheory {
  double mse = 0.0;    ///< (μ/2) Tr[(U_Fᵀ P U_F)⁻¹ U_Fᵀ P R_v U_F]
  double alpha = 0.0;  ///< 1 − 2μ λ_min(U_Fᵀ P U_F)
};

/// Throws ConfigError when mu is outside (0, mu_max).
LmsTheory lms_mse_theory(const SpectralBasis& basis, const Vector& p, const NoiseModel& noise, double mu);

// ---- sampling-probability design ------------------------------------------

struct AdaptiveDesignSpec {
  double alpha_bar = 0.9;  ///< target rate in (0, 1)
  double gamma = 1e-3;     ///< MSE target
  double mu = 0.1;
  NoiseModel noise;
  Vector p_max;
};

struct ProbabilityDesign {
  Vector p;
  double total = 0.0;       ///< 1ᵀp
  double lambda_min = 0.0;  ///< λ_min(U_Fᵀ diag(p) U_F)
  double rate_floor = 0.0;  ///< (1 − ᾱ)/(2μ)
  double trace = 0.0;       ///< Tr(U_Fᵀ diag(p) R_v U_F)
  double mse_bound = 0.0;   ///< (μ/2) trace / λ_min
  double mse = 0.0;         ///< lms_mse_theory at p
  double alpha = 0.0;
  int newton_steps = 0;
};

/// Minimizes 1ᵀp subject to λ_min(U_Fᵀ diag(p) U_F) ≥ (1−ᾱ)/(2μ),
/// Tr(U_Fᵀ diag(p) R_v U_F) ≤ (2γ/μ) λ_min(U_Fᵀ diag(p) U_F), 0 ≤ p ≤ p_max.
///
/// Solved with a log-barrier path-following Newton method on the
/// equivalent semidefinite form in (p, s):
///   U_Fᵀ diag(p) U_F ⪰ sI,  s ≥ (1−ᾱ)/(2μ),  (2γ/μ) s ≥ Tr(·),  box.
/// The constraints must be strictly feasible at p_max; otherwise ConfigError names
/// the binding constraint.
ProbabilityDesign design_probabilities(const AdaptiveDesignSpec& spec, const SpectralBasis& basis);

// ---- simulation -------------------------------------------------------------

/// x_true switches to `x` at iteration `start`; segments sorted by start,
/// the first at 0.
struct TruthSegment {
  std::uint64_t start = 0;
  Vector x;
};

struct LearningCurve {
  std::vector<double> squared_error;  ///< ||x̂[t] − x[t]||² after step t
  Vector final_estimate;
};

/// Algorithm loop from x̂ = 0 for `iterations` steps.
LearningCurve lms_run(const SpectralBasis& basis, const std::vector<TruthSegment>& truth,
                      const ProbabilisticSampler& sampler, const NoiseModel& noise, double mu,
                      std::uint64_t iterations);
LearningCurve lms_run(const SpectralBasis& basis, const Vector& x_true, const ProbabilisticSampler& sampler,
                      const NoiseModel& noise, double mu, std::uint64_t iterations);

struct ReplicaStudy {
  std::vector<double> mean_curve;  ///< replica average of squared_error
  double steady_state = 0.0;       ///< mean over replicas of the tail time-average
  double std_error = 0.0;          ///< across-replica standard error of steady_state
  Index replicas = 0;
};

/// Independent replicas; replica r samples with seed derive_seed(seed, r).
/// The tail is the final `tail_fraction` of each run. Replicas run on OpenMP
/// threads; reduction is in replica order.
ReplicaStudy lms_replicas(const SpectralBasis& basis, const Vector& x_true, const Vector& p, const NoiseModel& noise,
                          double mu, std::uint64_t iterations, Index replicas, std::uint64_t seed,
                          double tail_fraction = 0.2);

namespace serial {
ReplicaStudy lms_replicas(const SpectralBasis& basis, const Vector& x_true, const Vector& p, const NoiseModel& noise,
                          double mu, std::uint64_t iterations, Index replicas, std::uint64_t seed,
                          double tail_fraction = 0.2);
}

/// exp of the least-squares slope of log(curve[t]) over t in [first, last).
/// The curve must be strictly positive on that range.
double decay_factor(const std::vector<double>& curve, std::size_t first, std::size_t last);

}  // namespace gsp
