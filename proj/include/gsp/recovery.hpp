#pragma once

#include "gsp/sampling.hpp"
#include "gsp/spectral.hpp"
#include "gsp/types.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace gsp {

struct RecoveryCondition {
  bool ok = false;       ///< norm < 1 − 1e-9
  double norm = 1.0;     ///< ||D_Sᶜ U_F||_2
  bool rank_ok = false;  ///< rank(P_Sᵀ U_F) = |F|
  Index rank = 0;
};

RecoveryCondition recovery_condition(const SpectralBasis& basis, const VertexSet& s);

/// σ_min(D_S U_F), i.e. cos of the largest angle between the sampled and
/// bandlimited subspaces; 0 when |S| < |F|.
double sampling_cosine(const SpectralBasis& basis, const VertexSet& s);

struct ObservationBatch {
  VertexSet samples;
  Vector values;  ///< y_S, ordered like samples.members()
  std::optional<NoiseModel> noise;

  /// Samples x on S.
  static ObservationBatch sample(const VertexSet& s, const Vector& x);
};

enum class RecoveryMethod { consistent, blue, l1 };
std::string_view method_name(RecoveryMethod m);

struct RecoveryReport {
  Vector x_hat;
  Vector s_hat;  ///< in-band coefficients; x_hat = U_F s_hat
  double condition = 0.0;  ///< σ_min(D_S U_F)
  std::optional<double> theoretical_mse;
  RecoveryMethod method = RecoveryMethod::consistent;
  bool converged = true;
  int iterations = 0;
};

/// x̂ = U_F (P_Sᵀ U_F)† y_S. Throws NumericalError carrying ||D_Sᶜ U_F||
/// when the recovery condition fails.
RecoveryReport consistent_reconstruct(const SpectralBasis& basis, const ObservationBatch& obs);

/// Precomputed BLUE map y_S ↦ ŝ_F for a fixed (S, R_v); reused across
/// Monte Carlo trials.
class BlueEstimator {
 public:
  BlueEstimator(const SpectralBasis& basis, const VertexSet& s, const NoiseModel& noise);

  Vector coefficients(const Vector& y_s) const { return gain_ * y_s; }
  Vector estimate(const Vector& y_s) const { return uf_ * coefficients(y_s); }
  /// Tr of the estimator covariance, i.e. the MSE.
  double mse() const noexcept { return mse_; }
  double condition() const noexcept { return condition_; }

 private:
  Matrix uf_;
  Matrix gain_;  // (U_Sᵀ R_S⁻¹ U_S)⁻¹ U_Sᵀ R_S⁻¹
  double mse_ = 0.0;
  double condition_ = 0.0;
};

/// Requires obs.noise; theoretical_mse is filled in.
RecoveryReport blue_reconstruct(const SpectralBasis& basis, const ObservationBatch& obs);

/// Tr[(Σ_{i∈S} u_{F,i} u_{F,i}ᵀ / r_i²)⁻¹]
double theoretical_mse(const SpectralBasis& basis, const VertexSet& s, const NoiseModel& noise);
/// Tr[(U_Fᵀ P_S (P_Sᵀ R P_S)⁻¹ P_Sᵀ U_F)⁻¹] for a full n×n covariance R.
double theoretical_mse_general(const SpectralBasis& basis, const VertexSet& s, const Matrix& covariance);

struct MismatchBound {
  double bound = 0.0;       ///< ||Δx|| / cos_theta
  double cos_theta = 0.0;   ///< σ_min(D_S U_F)
  double delta_norm = 0.0;  ///< ||x − B_F x||
  double observed_error = 0.0;
};

/// Worst-case error of consistent reconstruction for x = B_F x + Δx.
/// observed_error is ||x̂ − x||, the quantity the bound controls.
/// Throws NumericalError if cos_theta ≤ 1e-12.
MismatchBound mismatch_bound(const SpectralBasis& basis, const VertexSet& s, const Vector& x);

struct MonteCarloMse {
  Index trials = 0;
  double mse = 0.0;        ///< mean of ||x̂ − x||²
  double std_error = 0.0;  ///< standard error of that mean
  Vector mean_estimate;    ///< componentwise mean of x̂
  Vector mean_std_error;   ///< componentwise standard error of mean_estimate
};

/// BLUE over `trials` independent Gaussian noise draws; trial t uses the
/// stream derive_seed(seed, t). Trials run on OpenMP threads and are reduced
/// in a fixed blocked order, so the result does not depend on thread count.
MonteCarloMse blue_monte_carlo(const SpectralBasis& basis, const VertexSet& s, const NoiseModel& noise,
                               const Vector& x, Index trials, std::uint64_t seed);

namespace serial {
MonteCarloMse blue_monte_carlo(const SpectralBasis& basis, const VertexSet& s, const NoiseModel& noise,
                               const Vector& x, Index trials, std::uint64_t seed);
}

// ---- robust ℓ1 recovery ---------------------------------------------------

struct L1Options {
  double rho = 1.0;
  double relaxation = 1.6;
  double tolerance = 1e-7;
  int max_iterations = 20000;
};

/// x̂ = U_F s* with s* = argmin ||y − U_F s||₁, by ADMM on r = y − U_F s.
/// Non-convergence is reported through RecoveryReport::converged.
RecoveryReport l1_reconstruct(const SpectralBasis& basis, const Vector& y, const L1Options& options = {});

/// max_{j∈F, i} |u_j(i)|
double coherence(const SpectralBasis& basis);
/// 1 / (2 μ² |F|), unfloored.
double l1_recovery_bound(const SpectralBasis& basis);

}  // namespace gsp
