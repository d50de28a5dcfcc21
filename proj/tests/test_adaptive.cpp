#include "gsp/adaptive.hpp"
#include "gsp/rng.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

using namespace gsp;

TEST_CASE("sampler validates probabilities") {
  CHECK_THROWS_AS(ProbabilisticSampler(Vector::Constant(3, 1.2), 1), ConfigError);
  CHECK_THROWS_AS(ProbabilisticSampler(Vector::Constant(3, -0.1), 1), ConfigError);
  CHECK_THROWS_AS(ProbabilisticSampler(Vector::Constant(3, 0.6), Vector::Constant(3, 0.5), 1), ConfigError);
  CHECK_THROWS_AS(ProbabilisticSampler(Vector::Constant(3, 0.5), Vector::Constant(2, 0.5), 1), DimensionError);
  const ProbabilisticSampler s((Vector(4) << 0.0, 0.3, 1.0, 0.0).finished(), 7);
  CHECK(s.expected_set() == VertexSet(4, {1, 2}));
}

TEST_CASE("observation respects the probabilities") {
  const ProbabilisticSampler s((Vector(3) << 0.0, 1.0, 0.3).finished(), 11);
  const Vector x = (Vector(3) << 1.0, 2.0, 3.0).finished();
  const NoiseModel quiet{Vector::Zero(3)};
  const int draws = 100000;
  int hits = 0;
  for (int t = 0; t < draws; ++t) {
    const Observation o = observe(x, s, quiet, std::uint64_t(t));
    CHECK(o.mask(0) == 0.0);
    CHECK(o.y(0) == 0.0);
    CHECK(o.mask(1) == 1.0);
    CHECK(o.y(1) == 2.0);
    CHECK(o.y(2) == o.mask(2) * 3.0);
    hits += o.mask(2) > 0.0;
  }
  const double se = std::sqrt(0.3 * 0.7 / draws);
  CHECK(std::abs(double(hits) / draws - 0.3) <= 4 * se);
  CHECK(s.sampled(2, 42) == (s.mask(42)(2) == 1.0));
}

TEST_CASE("observation noise has the configured variance") {
  const ProbabilisticSampler s = ProbabilisticSampler::uniform(2, 1.0, 3);
  const NoiseModel noise{(Vector(2) << 0.25, 4.0).finished()};
  const int draws = 50000;
  Vector sq = Vector::Zero(2);
  for (int t = 0; t < draws; ++t) sq += observe(Vector::Zero(2), s, noise, std::uint64_t(t)).y.cwiseAbs2();
  sq /= draws;
  CHECK(sq(0) == doctest::Approx(0.25).epsilon(0.03));
  CHECK(sq(1) == doctest::Approx(4.0).epsilon(0.03));
}

TEST_CASE("LMS step examples") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(12, 0.3, 2), 3);
  const Vector x = synthesize_bandlimited(b, 5);
  const LmsState start{Vector::Zero(12), 1.0, 0};
  const LmsState full = lms_step(start, b, x, Vector::Ones(12));
  CHECK((full.x_hat - x).norm() <= 1e-10);
  CHECK(full.iteration == 1);
  const LmsState none = lms_step({x, 0.3, 4}, b, Vector::Zero(12), Vector::Zero(12));
  CHECK((none.x_hat - x).norm() == 0.0);
  CHECK(none.iteration == 5);
}

TEST_CASE("LMS iterates stay bandlimited") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(15, 0.3, 4), 4);
  const ProbabilisticSampler s = ProbabilisticSampler::uniform(15, 0.4, 9);
  Rng rng(3);
  LmsState st{Vector::Zero(15), 0.2, 0};
  for (std::uint64_t t = 0; t < 300; ++t) {
    Vector y(15);
    for (Index i = 0; i < 15; ++i) y(i) = rng.normal();
    const Vector m = s.mask(t);
    st = lms_step(st, b, y.cwiseProduct(m), m);
  }
  CHECK((st.x_hat - band_project(b, st.x_hat)).norm() <= 1e-10 * std::max(1.0, st.x_hat.norm()));
}

TEST_CASE("adaptive recovery condition") {
  const SpectralBasis b = test::laplacian_basis(test::two_k2(), 2);
  CHECK(adaptive_recovery_condition(b, ProbabilisticSampler::uniform(4, 0.2, 1)).ok);
  const ProbabilisticSampler one_side((Vector(4) << 0.5, 0.5, 0.0, 0.0).finished(), 1);
  const AdaptiveCondition c = adaptive_recovery_condition(b, one_side);
  CHECK_FALSE(c.ok);
  CHECK(c.norm == doctest::Approx(1.0));
  CHECK_THROWS_AS(stable_step_range(b, one_side.probabilities()), NumericalError);
}

TEST_CASE("step range and theory for uniform probabilities") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(20, 0.25, 7), 5);
  const double q = 0.4;
  const StepRange r = stable_step_range(b, Vector::Constant(20, q));
  CHECK(r.lambda_min == doctest::Approx(q));
  CHECK(r.lambda_max == doctest::Approx(q));
  CHECK(r.mu_max == doctest::Approx(2 / q));
  const LmsTheory t = lms_mse_theory(b, Vector::Constant(20, q), NoiseModel::uniform(20, 0.3), 0.05);
  CHECK(t.mse == doctest::Approx(0.05 / 2 * 5 * 0.3));
  CHECK(t.alpha == doctest::Approx(1 - 2 * 0.05 * q));
  CHECK_THROWS_AS(lms_mse_theory(b, Vector::Constant(20, q), NoiseModel::uniform(20), r.mu_max), ConfigError);
  CHECK_THROWS_AS(lms_mse_theory(b, Vector::Constant(20, q), NoiseModel::uniform(20), 0.0), ConfigError);
}

TEST_CASE("LMS diverges beyond twice the stable step") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(20, 0.25, 3), 4);
  const Vector x = synthesize_bandlimited(b, 1);
  const Vector p = Vector::Constant(20, 0.5);
  const double mu = 2 * stable_step_range(b, p).mu_max;
  const LearningCurve c = lms_run(b, x, ProbabilisticSampler(p, 6), NoiseModel{Vector::Zero(20)}, mu, 200);
  CHECK(c.squared_error.back() > 1e6 * x.squaredNorm());
}

TEST_CASE("noiseless LMS converges and tracks a switch") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(20, 0.25, 5), 4);
  const Vector x1 = synthesize_bandlimited(b, 11);
  const Vector x2 = synthesize_bandlimited(b, 12);
  const ProbabilisticSampler s = ProbabilisticSampler::uniform(20, 0.5, 2);
  const LearningCurve c = lms_run(b, {{0, x1}, {400, x2}}, s, NoiseModel{Vector::Zero(20)}, 0.5, 800);
  REQUIRE(c.squared_error.size() == 800);
  CHECK(c.squared_error[399] <= 1e-12 * x1.squaredNorm());
  CHECK(c.squared_error[400] > 1e-3 * x2.squaredNorm());
  CHECK(c.squared_error[799] <= 1e-12 * x2.squaredNorm());
  CHECK((c.final_estimate - x2).norm() <= 1e-6 * x2.norm());
  CHECK_THROWS_AS(lms_run(b, {{5, x1}}, s, NoiseModel{Vector::Zero(20)}, 0.5, 10), ConfigError);
}

TEST_CASE("steady-state MSE approaches the theory at small steps") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(20, 0.25, 8), 4);
  const Vector x = synthesize_bandlimited(b, 3);
  const Vector p = Vector::Constant(20, 0.5);
  const NoiseModel noise = NoiseModel::uniform(20, 0.01);
  const double mu = 0.05;
  const ReplicaStudy st = lms_replicas(b, x, p, noise, mu, 4000, 16, 21);
  const double theory = lms_mse_theory(b, p, noise, mu).mse;
  CHECK(st.steady_state == doctest::Approx(theory).epsilon(0.15));
  CHECK(st.replicas == 16);
  CHECK(st.mean_curve.size() == 4000);
}

TEST_CASE("decay factor of a geometric curve") {
  std::vector<double> g(50);
  for (size_t t = 0; t < g.size(); ++t) g[t] = 3.0 * std::pow(0.9, double(t));
  CHECK(decay_factor(g, 5, 40) == doctest::Approx(0.9));
  g[10] = 0.0;
  CHECK_THROWS(decay_factor(g, 5, 40));
}
