#include "gsp/adaptive.hpp"

#include "gsp/linalg.hpp"
#include "gsp/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace gsp {

namespace {

constexpr std::uint64_t kSamplingTag = 0x73616d706c65ULL;
constexpr std::uint64_t kNoiseTag = 0x6e6f697365ULL;

std::uint64_t vertex_key(std::uint64_t seed, std::uint64_t tag, Index vertex) {
  return derive_seed(derive_seed(seed, tag), static_cast<std::uint64_t>(vertex));
}

void check_probabilities(const Vector& p, const Vector& p_max) {
  require_size(p_max.size(), p.size(), "sampling probability caps");
  for (Index i = 0; i < p.size(); ++i) {
    if (!(p_max(i) >= 0.0 && p_max(i) <= 1.0)) {
      throw ConfigError("p_max at vertex " + std::to_string(i + 1) + " must lie in [0, 1]");
    }
    if (!(p(i) >= 0.0 && p(i) <= p_max(i))) {
      throw ConfigError("sampling probability at vertex " + std::to_string(i + 1) + " must lie in [0, p_max]");
    }
  }
}

Matrix weighted_gram(const SpectralBasis& basis, const Vector& w) {
  const Matrix& uf = basis.band_vectors();
  return uf.transpose() * w.asDiagonal() * uf;
}

}  // namespace

ProbabilisticSampler::ProbabilisticSampler(Vector p, Vector p_max, std::uint64_t seed)
    : p_(std::move(p)), p_max_(std::move(p_max)), seed_(seed) {
  check_probabilities(p_, p_max_);
}

ProbabilisticSampler::ProbabilisticSampler(Vector p, std::uint64_t seed)
    : ProbabilisticSampler(p, Vector::Ones(p.size()), seed) {}

ProbabilisticSampler ProbabilisticSampler::uniform(Index order, double p, std::uint64_t seed) {
  return ProbabilisticSampler(Vector::Constant(order, p), seed);
}

VertexSet ProbabilisticSampler::expected_set() const {
  std::vector<Index> members;
  for (Index i = 0; i < p_.size(); ++i)
    if (p_(i) > 0.0) members.push_back(i);
  return VertexSet(order(), std::move(members));
}

bool ProbabilisticSampler::sampled(Index vertex, std::uint64_t t) const {
  return Rng::uniform_at(vertex_key(seed_, kSamplingTag, vertex), t) < p_(vertex);
}

Vector ProbabilisticSampler::mask(std::uint64_t t) const {
  Vector d(order());
  for (Index i = 0; i < d.size(); ++i) d(i) = sampled(i, t) ? 1.0 : 0.0;
  return d;
}

Observation observe(const Vector& x, const ProbabilisticSampler& sampler, const NoiseModel& noise, std::uint64_t t) {
  require_size(x.size(), sampler.order(), "observed signal");
  require_size(noise.order(), sampler.order(), "noise model");
  Observation out{sampler.mask(t), Vector::Zero(x.size())};
  for (Index i = 0; i < x.size(); ++i) {
    if (out.mask(i) == 0.0) continue;
    const double r2 = noise.variances(i);
    const double v = r2 > 0.0 ? std::sqrt(r2) * Rng::normal_at(vertex_key(sampler.seed(), kNoiseTag, i), t) : 0.0;
    out.y(i) = x(i) + v;
  }
  return out;
}

LmsState lms_step(const LmsState& state, const SpectralBasis& basis, const Vector& y, const Vector& mask) {
  require_size(state.x_hat.size(), basis.order(), "LMS estimate");
  require_size(y.size(), basis.order(), "LMS observation");
  require_size(mask.size(), basis.order(), "LMS mask");
  const Matrix& uf = basis.band_vectors();
  const Vector innovation = mask.cwiseProduct(y - state.x_hat);
  return {state.x_hat + state.mu * (uf * (uf.transpose() * innovation)), state.mu, state.iteration + 1};
}

AdaptiveCondition adaptive_recovery_condition(const SpectralBasis& basis, const ProbabilisticSampler& sampler) {
  require_size(sampler.order(), basis.order(), "sampler");
  const VertexSet missing = sampler.expected_set().complement();
  AdaptiveCondition out;
  out.norm = missing.empty() ? 0.0 : linalg::spectral_norm(linalg::select_rows(basis.band_vectors(), missing.members()));
  out.ok = out.norm < 1.0 - 1e-9;
  return out;
}

StepRange stable_step_range(const SpectralBasis& basis, const Vector& p) {
  require_size(p.size(), basis.order(), "sampling probabilities");
  const Vector ev = linalg::symmetric_eigenvalues(weighted_gram(basis, p));
  StepRange out{ev(0), ev(ev.size() - 1), 0.0};
  if (!(out.lambda_min > linalg::kRankTolerance * std::max(out.lambda_max, 1e-300))) {
    throw NumericalError("stable_step_range: U_F^T diag(p) U_F is singular", out.lambda_min);
  }
  out.mu_max = 2.0 * out.lambda_min / (out.lambda_max * out.lambda_max);
  return out;
}

LmsTheory lms_mse_theory(const SpectralBasis& basis, const Vector& p, const NoiseModel& noise, double mu) {
  require_size(noise.order(), basis.order(), "noise model");
  const StepRange range = stable_step_range(basis, p);
  if (!(mu > 0.0 && mu < range.mu_max)) {
    throw ConfigError("step size mu=" + std::to_string(mu) + " outside the stable range (0, " +
                      std::to_string(range.mu_max) + ")");
  }
  const Matrix a = weighted_gram(basis, p);
  const Matrix b = weighted_gram(basis, p.cwiseProduct(noise.variances));
  Eigen::LLT<Matrix> llt(a);
  return {0.5 * mu * llt.solve(b).trace(), 1.0 - 2.0 * mu * range.lambda_min};
}

LearningCurve lms_run(const SpectralBasis& basis, const std::vector<TruthSegment>& truth,
                      const ProbabilisticSampler& sampler, const NoiseModel& noise, double mu,
                      std::uint64_t iterations) {
  require_size(sampler.order(), basis.order(), "sampler");
  if (truth.empty() || truth.front().start != 0) throw ConfigError("lms_run: truth schedule must start at 0");
  for (size_t k = 0; k < truth.size(); ++k) {
    require_size(truth[k].x.size(), basis.order(), "truth segment");
    if (k > 0 && truth[k].start <= truth[k - 1].start) throw ConfigError("lms_run: truth segments must be increasing");
  }
  if (!(mu > 0.0)) throw ConfigError("lms_run: mu must be positive");

  LearningCurve out;
  out.squared_error.reserve(static_cast<size_t>(iterations));
  LmsState state{Vector::Zero(basis.order()), mu, 0};
  size_t segment = 0;
  for (std::uint64_t t = 0; t < iterations; ++t) {
    while (segment + 1 < truth.size() && truth[segment + 1].start <= t) ++segment;
    const Vector& x = truth[segment].x;
    const Observation obs = observe(x, sampler, noise, t);
    state = lms_step(state, basis, obs.y, obs.mask);
    out.squared_error.push_back((state.x_hat - x).squaredNorm());
  }
  out.final_estimate = std::move(state.x_hat);
  return out;
}

LearningCurve lms_run(const SpectralBasis& basis, const Vector& x_true, const ProbabilisticSampler& sampler,
                      const NoiseModel& noise, double mu, std::uint64_t iterations) {
  return lms_run(basis, std::vector<TruthSegment>{{0, x_true}}, sampler, noise, mu, iterations);
}

namespace {

double tail_average(const std::vector<double>& curve, double tail_fraction) {
  const size_t n = curve.size();
  const size_t len = std::max<size_t>(1, static_cast<size_t>(std::floor(tail_fraction * static_cast<double>(n))));
  double sum = 0.0;
  for (size_t t = n - len; t < n; ++t) sum += curve[t];
  return sum / static_cast<double>(len);
}

void check_study(std::uint64_t iterations, Index replicas, double tail_fraction) {
  if (iterations < 1 || replicas < 1) throw ConfigError("lms_replicas: need iterations and replicas >= 1");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) throw ConfigError("lms_replicas: tail fraction in (0, 1]");
}

ReplicaStudy reduce_replicas(const std::vector<std::vector<double>>& curves, double tail_fraction) {
  ReplicaStudy out;
  out.replicas = static_cast<Index>(curves.size());
  out.mean_curve.assign(curves.front().size(), 0.0);
  std::vector<double> tails;
  for (const auto& c : curves) {
    for (size_t t = 0; t < c.size(); ++t) out.mean_curve[t] += c[t];
    tails.push_back(tail_average(c, tail_fraction));
  }
  const double r = static_cast<double>(curves.size());
  for (double& v : out.mean_curve) v /= r;
  double sum = 0.0;
  for (double v : tails) sum += v;
  out.steady_state = sum / r;
  double ss = 0.0;
  for (double v : tails) ss += (v - out.steady_state) * (v - out.steady_state);
  out.std_error = curves.size() > 1 ? std::sqrt(ss / (r - 1.0) / r) : 0.0;
  return out;
}

}  // namespace

ReplicaStudy lms_replicas(const SpectralBasis& basis, const Vector& x_true, const Vector& p, const NoiseModel& noise,
                          double mu, std::uint64_t iterations, Index replicas, std::uint64_t seed,
                          double tail_fraction) {
  check_study(iterations, replicas, tail_fraction);
  std::vector<std::vector<double>> curves(static_cast<size_t>(replicas));
#pragma omp parallel for schedule(dynamic)
  for (Index r = 0; r < replicas; ++r) {
    const ProbabilisticSampler sampler(p, derive_seed(seed, static_cast<std::uint64_t>(r)));
    curves[static_cast<size_t>(r)] = lms_run(basis, x_true, sampler, noise, mu, iterations).squared_error;
  }
  return reduce_replicas(curves, tail_fraction);
}

namespace serial {

ReplicaStudy lms_replicas(const SpectralBasis& basis, const Vector& x_true, const Vector& p, const NoiseModel& noise,
                          double mu, std::uint64_t iterations, Index replicas, std::uint64_t seed,
                          double tail_fraction) {
  check_study(iterations, replicas, tail_fraction);
  std::vector<std::vector<double>> curves;
  for (Index r = 0; r < replicas; ++r) {
    const ProbabilisticSampler sampler(p, derive_seed(seed, static_cast<std::uint64_t>(r)));
    curves.push_back(lms_run(basis, x_true, sampler, noise, mu, iterations).squared_error);
  }
  return reduce_replicas(curves, tail_fraction);
}

}  // namespace serial

double decay_factor(const std::vector<double>& curve, std::size_t first, std::size_t last) {
  if (last > curve.size() || last < first + 2) throw ConfigError("decay_factor: need at least two points in range");
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  const double m = static_cast<double>(last - first);
  for (size_t t = first; t < last; ++t) {
    if (!(curve[t] > 0.0)) throw NumericalError("decay_factor: nonpositive curve value", curve[t]);
    const double tt = static_cast<double>(t);
    const double y = std::log(curve[t]);
    st += tt;
    sy += y;
    stt += tt * tt;
    sty += tt * y;
  }
  const double slope = (m * sty - st * sy) / (m * stt - st * st);
  return std::exp(slope);
}

}  // namespace gsp
