#include "gsp/recovery.hpp"

#include "gsp/linalg.hpp"
#include "gsp/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace gsp {

RecoveryCondition recovery_condition(const SpectralBasis& basis, const VertexSet& s) {
  require_size(s.order(), basis.order(), "recovery_condition vertex set");
  RecoveryCondition out;
  const VertexSet sc = s.complement();
  out.norm = sc.empty() ? 0.0 : linalg::spectral_norm(linalg::select_rows(basis.band_vectors(), sc.members()));
  out.ok = out.norm < 1.0 - 1e-9;
  out.rank = s.empty() ? 0 : linalg::numerical_rank(linalg::select_rows(basis.band_vectors(), s.members()));
  out.rank_ok = out.rank == basis.bandwidth();
  return out;
}

double sampling_cosine(const SpectralBasis& basis, const VertexSet& s) {
  require_size(s.order(), basis.order(), "sampling_cosine vertex set");
  if (s.size() < basis.bandwidth()) return 0.0;
  const Vector sv = linalg::singular_values(linalg::select_rows(basis.band_vectors(), s.members()));
  return std::clamp(sv(sv.size() - 1), 0.0, 1.0);
}

ObservationBatch ObservationBatch::sample(const VertexSet& s, const Vector& x) {
  require_size(x.size(), s.order(), "sampled signal");
  Vector y(s.size());
  for (Index k = 0; k < s.size(); ++k) y(k) = x(s.members()[static_cast<size_t>(k)]);
  return {s, std::move(y), std::nullopt};
}

std::string_view method_name(RecoveryMethod m) {
  switch (m) {
    case RecoveryMethod::consistent: return "consistent";
    case RecoveryMethod::blue: return "blue";
    case RecoveryMethod::l1: return "l1";
  }
  return "?";
}

namespace {

void check_batch(const SpectralBasis& basis, const ObservationBatch& obs) {
  require_size(obs.samples.order(), basis.order(), "observation vertex set");
  require_size(obs.values.size(), obs.samples.size(), "observation values");
}

void require_recoverable(const SpectralBasis& basis, const VertexSet& s, const char* who) {
  const RecoveryCondition rc = recovery_condition(basis, s);
  if (!rc.ok) {
    throw NumericalError(std::string(who) + ": recovery condition fails, ||D_Sc U_F|| = " +
                             std::to_string(rc.norm),
                         rc.norm);
  }
}

}  // namespace

RecoveryReport consistent_reconstruct(const SpectralBasis& basis, const ObservationBatch& obs) {
  check_batch(basis, obs);
  require_recoverable(basis, obs.samples, "consistent_reconstruct");
  const Matrix us = linalg::select_rows(basis.band_vectors(), obs.samples.members());
  RecoveryReport out;
  out.method = RecoveryMethod::consistent;
  out.s_hat = linalg::pseudo_inverse(us) * obs.values;
  out.x_hat = basis.band_vectors() * out.s_hat;
  out.condition = sampling_cosine(basis, obs.samples);
  return out;
}

BlueEstimator::BlueEstimator(const SpectralBasis& basis, const VertexSet& s, const NoiseModel& noise)
    : uf_(basis.band_vectors()) {
  require_size(noise.order(), basis.order(), "noise model");
  require_recoverable(basis, s, "blue_reconstruct");
  for (Index v : s.members()) {
    if (!(noise.variances(v) > 0.0)) {
      throw ConfigError("noise variance at sampled vertex " + std::to_string(v + 1) + " must be positive");
    }
  }
  const Matrix us = linalg::select_rows(uf_, s.members());
  Vector w(s.size());
  for (Index k = 0; k < s.size(); ++k) w(k) = 1.0 / noise.variances(s.members()[static_cast<size_t>(k)]);
  const Matrix normal = us.transpose() * w.asDiagonal() * us;
  Eigen::LLT<Matrix> llt(normal);
  if (llt.info() != Eigen::Success) throw NumericalError("blue_reconstruct: singular normal matrix", 0.0);
  const Matrix cov = llt.solve(Matrix::Identity(normal.rows(), normal.cols()));
  gain_ = cov * us.transpose() * w.asDiagonal();
  mse_ = cov.trace();
  condition_ = sampling_cosine(basis, s);
}

RecoveryReport blue_reconstruct(const SpectralBasis& basis, const ObservationBatch& obs) {
  check_batch(basis, obs);
  if (!obs.noise) throw ConfigError("blue_reconstruct: observation batch carries no noise model");
  const BlueEstimator blue(basis, obs.samples, *obs.noise);
  RecoveryReport out;
  out.method = RecoveryMethod::blue;
  out.s_hat = blue.coefficients(obs.values);
  out.x_hat = basis.band_vectors() * out.s_hat;
  out.condition = blue.condition();
  out.theoretical_mse = blue.mse();
  return out;
}

double theoretical_mse(const SpectralBasis& basis, const VertexSet& s, const NoiseModel& noise) {
  require_size(noise.order(), basis.order(), "noise model");
  require_recoverable(basis, s, "theoretical_mse");
  const Matrix g = information_matrix(basis, s.members(), noise);
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) throw NumericalError("theoretical_mse: singular information matrix", 0.0);
  return llt.solve(Matrix::Identity(g.rows(), g.cols())).trace();
}

double theoretical_mse_general(const SpectralBasis& basis, const VertexSet& s, const Matrix& covariance) {
  require_size(covariance.rows(), basis.order(), "covariance rows");
  require_size(covariance.cols(), basis.order(), "covariance cols");
  require_recoverable(basis, s, "theoretical_mse_general");
  const Matrix p = s.selection_matrix();
  const Matrix rs = p.transpose() * covariance * p;
  Eigen::LLT<Matrix> rs_llt(rs);
  if (rs_llt.info() != Eigen::Success) throw NumericalError("theoretical_mse_general: singular noise covariance", 0.0);
  const Matrix pu = p.transpose() * basis.band_vectors();
  const Matrix g = pu.transpose() * rs_llt.solve(pu);
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) throw NumericalError("theoretical_mse_general: singular information matrix", 0.0);
  return llt.solve(Matrix::Identity(g.rows(), g.cols())).trace();
}

MismatchBound mismatch_bound(const SpectralBasis& basis, const VertexSet& s, const Vector& x) {
  require_size(x.size(), basis.order(), "mismatch signal");
  require_recoverable(basis, s, "mismatch_bound");
  MismatchBound out;
  out.cos_theta = sampling_cosine(basis, s);
  if (out.cos_theta <= 1e-12) {
    throw NumericalError("mismatch_bound: sampled and bandlimited subspaces are orthogonal", out.cos_theta);
  }
  out.delta_norm = (x - band_project(basis, x)).norm();
  out.bound = out.delta_norm / out.cos_theta;
  const RecoveryReport rec = consistent_reconstruct(basis, ObservationBatch::sample(s, x));
  out.observed_error = (rec.x_hat - x).norm();
  return out;
}

namespace {

struct MseAccumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  Vector mean;
  Vector mean_sq;

  explicit MseAccumulator(Index n = 0) : mean(Vector::Zero(n)), mean_sq(Vector::Zero(n)) {}

  void add(const Vector& x_hat, const Vector& x) {
    const double e = (x_hat - x).squaredNorm();
    sum += e;
    sum_sq += e * e;
    mean += x_hat;
    mean_sq += x_hat.cwiseAbs2();
  }
  void merge(const MseAccumulator& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    mean += o.mean;
    mean_sq += o.mean_sq;
  }
};

struct TrialContext {
  BlueEstimator blue;
  std::vector<Index> members;
  Vector clean;   // x on S
  Vector stddev;  // r_i on S
};

TrialContext make_context(const SpectralBasis& basis, const VertexSet& s, const NoiseModel& noise, const Vector& x) {
  require_size(x.size(), basis.order(), "Monte Carlo signal");
  TrialContext ctx{BlueEstimator(basis, s, noise), s.members(), Vector(s.size()), Vector(s.size())};
  for (Index k = 0; k < s.size(); ++k) {
    const Index v = ctx.members[static_cast<size_t>(k)];
    ctx.clean(k) = x(v);
    ctx.stddev(k) = std::sqrt(noise.variances(v));
  }
  return ctx;
}

Vector trial_estimate(const TrialContext& ctx, std::uint64_t seed, Index trial) {
  const std::uint64_t key = derive_seed(seed, static_cast<std::uint64_t>(trial));
  Vector y = ctx.clean;
  for (Index k = 0; k < y.size(); ++k) y(k) += ctx.stddev(k) * Rng::normal_at(key, static_cast<std::uint64_t>(k));
  return ctx.blue.estimate(y);
}

MonteCarloMse finish(const MseAccumulator& acc, Index trials) {
  MonteCarloMse out;
  out.trials = trials;
  const double t = static_cast<double>(trials);
  out.mse = acc.sum / t;
  const double var = trials > 1 ? std::max(0.0, (acc.sum_sq - t * out.mse * out.mse) / (t - 1.0)) : 0.0;
  out.std_error = std::sqrt(var / t);
  out.mean_estimate = acc.mean / t;
  const Vector comp_var =
      trials > 1 ? Vector(((acc.mean_sq - t * out.mean_estimate.cwiseAbs2()) / (t - 1.0)).cwiseMax(0.0))
                 : Vector(Vector::Zero(acc.mean.size()));
  out.mean_std_error = (comp_var / t).cwiseSqrt();
  return out;
}

void check_trials(Index trials) {
  if (trials < 1) throw ConfigError("Monte Carlo trial count must be positive");
}

}  // namespace

MonteCarloMse blue_monte_carlo(const SpectralBasis& basis, const VertexSet& s, const NoiseModel& noise,
                               const Vector& x, Index trials, std::uint64_t seed) {
  check_trials(trials);
  const TrialContext ctx = make_context(basis, s, noise, x);
  constexpr Index kBlock = 1024;
  const Index blocks = (trials + kBlock - 1) / kBlock;
  std::vector<MseAccumulator> partial(static_cast<size_t>(blocks), MseAccumulator(x.size()));

#pragma omp parallel for schedule(static)
  for (Index b = 0; b < blocks; ++b) {
    MseAccumulator& acc = partial[static_cast<size_t>(b)];
    const Index end = std::min(trials, (b + 1) * kBlock);
    for (Index t = b * kBlock; t < end; ++t) acc.add(trial_estimate(ctx, seed, t), x);
  }

  MseAccumulator total(x.size());
  for (const auto& acc : partial) total.merge(acc);
  return finish(total, trials);
}

namespace serial {

MonteCarloMse blue_monte_carlo(const SpectralBasis& basis, const VertexSet& s, const NoiseModel& noise,
                               const Vector& x, Index trials, std::uint64_t seed) {
  check_trials(trials);
  const TrialContext ctx = make_context(basis, s, noise, x);
  MseAccumulator acc(x.size());
  for (Index t = 0; t < trials; ++t) acc.add(trial_estimate(ctx, seed, t), x);
  return finish(acc, trials);
}

}  // namespace serial

}  // namespace gsp
