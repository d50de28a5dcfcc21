#include "gsp/linalg.hpp"
#include "gsp/recovery.hpp"
#include "gsp/rng.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace gsp;

namespace {

NoiseModel random_noise(Index n, std::uint64_t seed, double lo = 0.2, double hi = 2.0) {
  Rng rng(seed);
  NoiseModel noise{Vector(n)};
  for (Index i = 0; i < n; ++i) noise.variances(i) = rng.uniform(lo, hi);
  return noise;
}

VertexSet greedy_e(const SpectralBasis& b, Index m) {
  return greedy_select({CriterionKind::e_optimal, NoiseModel::uniform(b.order())}, b, m);
}

}  // namespace

TEST_CASE("recovery condition examples") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(12, 0.3, 1), 4);
  const RecoveryCondition all = recovery_condition(b, VertexSet::all(12));
  CHECK(all.ok);
  CHECK(all.norm == 0.0);
  CHECK(all.rank_ok);
  const RecoveryCondition few = recovery_condition(b, VertexSet(12, {0, 5, 7}));
  CHECK_FALSE(few.ok);
  CHECK_FALSE(few.rank_ok);

  const SpectralBasis split = test::laplacian_basis(test::two_k2(), 2);
  CHECK_FALSE(recovery_condition(split, VertexSet(4, {0, 1})).ok);
  CHECK(recovery_condition(split, VertexSet(4, {0, 2})).ok);
}

TEST_CASE("recovery condition implies full column rank") {
  Rng rng(8);
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(15, 0.3, 2), 5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Index> m;
    for (Index i = 0; i < 15; ++i)
      if (rng.bernoulli(0.4)) m.push_back(i);
    const RecoveryCondition rc = recovery_condition(b, VertexSet(15, m));
    if (rc.ok) CHECK(rc.rank_ok);
    if (Index(m.size()) < 5) CHECK_FALSE(rc.ok);
  }
}

TEST_CASE("consistent reconstruction of noiseless bandlimited signals") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SpectralBasis b = test::laplacian_basis(erdos_renyi(25, 0.2, seed), 5);
    const Vector x = synthesize_bandlimited(b, seed + 100);
    const VertexSet s = greedy_e(b, 5 + Index(seed % 4));
    REQUIRE(recovery_condition(b, s).ok);
    const RecoveryReport r = consistent_reconstruct(b, ObservationBatch::sample(s, x));
    CHECK((r.x_hat - x).norm() <= 1e-8 * x.norm());
    CHECK((r.x_hat - b.band_vectors() * r.s_hat).norm() <= 1e-10);
    CHECK(r.condition >= 0.0);
    CHECK(r.condition <= 1.0);
    CHECK((ObservationBatch::sample(s, r.x_hat).values - ObservationBatch::sample(s, x).values).norm() <= 1e-10);
  }
}

TEST_CASE("consistent reconstruction keeps arbitrary samples when |S| = |F|") {
  Rng rng(5);
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(20, 0.25, 4), 6);
  const VertexSet s = greedy_e(b, 6);
  Vector y(6);
  for (Index k = 0; k < 6; ++k) y(k) = rng.normal();
  const RecoveryReport r = consistent_reconstruct(b, {s, y, std::nullopt});
  CHECK((ObservationBatch::sample(s, r.x_hat).values - y).norm() <= 1e-10);
}

TEST_CASE("consistent reconstruction on P3 with one sample") {
  const SpectralBasis p3 = test::laplacian_basis(path_graph(3), 1);
  const double amp = 2.5;
  const Vector y = Vector::Constant(1, amp / std::sqrt(3.0));
  const RecoveryReport r = consistent_reconstruct(p3, {VertexSet(3, {1}), y, std::nullopt});
  for (Index i = 0; i < 3; ++i) CHECK(r.x_hat(i) == doctest::Approx(amp / std::sqrt(3.0)));
}

TEST_CASE("failed recovery condition raises with the norm") {
  const SpectralBasis split = test::laplacian_basis(test::two_k2(), 2);
  try {
    consistent_reconstruct(split, ObservationBatch::sample(VertexSet(4, {0, 1}), Vector::Ones(4)));
    FAIL("expected a NumericalError");
  } catch (const NumericalError& e) {
    CHECK(e.residual() == doctest::Approx(1.0));
  }
}

TEST_CASE("mismatch bound") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(20, 0.25, 3), 4);
  const VertexSet s = greedy_e(b, 6);
  const Vector xf = synthesize_bandlimited(b, 9);
  const MismatchBound exact = mismatch_bound(b, s, xf);
  CHECK(exact.bound < 1e-10);
  CHECK(exact.observed_error < 1e-9);

  Rng rng(10);
  Vector w(20);
  for (Index i = 0; i < 20; ++i) w(i) = rng.normal();
  const MismatchBound full = mismatch_bound(b, VertexSet::all(20), xf + 0.1 * w);
  CHECK(full.cos_theta == doctest::Approx(1.0));
  CHECK(full.bound == doctest::Approx(full.delta_norm));

  for (int trial = 0; trial < 200; ++trial) {
    for (Index i = 0; i < 20; ++i) w(i) = rng.normal();
    const MismatchBound mb = mismatch_bound(b, s, xf + rng.uniform(0.01, 1.0) * w);
    CHECK(mb.observed_error <= mb.bound + 1e-9);
  }
}

TEST_CASE("BLUE with white noise equals consistent reconstruction") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(20, 0.25, 6), 4);
  const VertexSet s = greedy_e(b, 7);
  Rng rng(2);
  Vector y(7);
  for (Index k = 0; k < 7; ++k) y(k) = rng.normal();
  const RecoveryReport c = consistent_reconstruct(b, {s, y, std::nullopt});
  const RecoveryReport w = blue_reconstruct(b, {s, y, NoiseModel::uniform(20, 0.3)});
  CHECK((c.x_hat - w.x_hat).norm() <= 1e-8);
  REQUIRE(w.theoretical_mse);
  CHECK(*w.theoretical_mse == doctest::Approx(0.3 * theoretical_mse(b, s, NoiseModel::uniform(20))));
  CHECK_THROWS_AS(blue_reconstruct(b, {s, y, std::nullopt}), ConfigError);
}

TEST_CASE("BLUE scalar case") {
  const SpectralBasis b = test::laplacian_basis(Graph(1, std::vector<Edge>{}), 1);
  const NoiseModel noise{Vector::Constant(1, 0.4)};
  const RecoveryReport r = blue_reconstruct(b, {VertexSet(1, {0}), Vector::Constant(1, 1.7), noise});
  CHECK(r.x_hat(0) == doctest::Approx(1.7));
  CHECK(*r.theoretical_mse == doctest::Approx(0.4));
  CHECK(theoretical_mse(b, VertexSet(1, {0}), noise) == doctest::Approx(0.4));
}

TEST_CASE("MSE formulas agree") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const SpectralBasis b = test::laplacian_basis(erdos_renyi(18, 0.3, seed), 4);
    const NoiseModel noise = random_noise(18, seed);
    const VertexSet s = greedy_e(b, 4 + Index(seed % 3));
    const double diag = theoretical_mse(b, s, noise);
    const Matrix r = noise.variances.asDiagonal();
    CHECK(std::abs(diag - theoretical_mse_general(b, s, r)) <= 1e-9 * std::max(1.0, diag));
    const Matrix g = b.band_vectors().transpose() * s.vertex_limiting() * b.band_vectors();
    CHECK(theoretical_mse(b, s, NoiseModel::uniform(18, 2.0)) == doctest::Approx(2.0 * g.inverse().trace()));
  }
}

TEST_CASE("A objective is minus the MSE when |S| = |F|") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(16, 0.3, 12), 4);
  const NoiseModel noise = random_noise(16, 3);
  const VertexSet s = greedy_e(b, 4);
  REQUIRE(recovery_condition(b, s).ok);
  CHECK(objective({CriterionKind::a_optimal, noise}, b, s) == doctest::Approx(-theoretical_mse(b, s, noise)));
}

TEST_CASE("BLUE Monte Carlo on a heteroscedastic P3") {
  const SpectralBasis p3 = test::laplacian_basis(path_graph(3), 2);
  const NoiseModel noise{(Vector(3) << 0.5, 1.5, 0.2).finished()};
  const VertexSet s = VertexSet::all(3);
  const Vector x = synthesize_bandlimited(p3, 4);
  const MonteCarloMse mc = blue_monte_carlo(p3, s, noise, x, 100000, 7);
  CHECK(std::abs(mc.mse - theoretical_mse(p3, s, noise)) <= 3 * mc.std_error);
}

TEST_CASE("BLUE is unbiased") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(15, 0.3, 5), 4);
  const NoiseModel noise = random_noise(15, 5);
  const VertexSet s = greedy_e(b, 6);
  const Vector x = synthesize_bandlimited(b, 2);
  const MonteCarloMse mc = blue_monte_carlo(b, s, noise, x, 20000, 3);
  for (Index i = 0; i < 15; ++i) CHECK(std::abs(mc.mean_estimate(i) - x(i)) <= 4 * mc.mean_std_error(i) + 1e-12);
}
