#include "gsp/recovery.hpp"
#include "gsp/rng.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace gsp;

TEST_CASE("coherence bound examples") {
  const SpectralBasis p3 = test::laplacian_basis(path_graph(3), 1);
  CHECK(coherence(p3) == doctest::Approx(1 / std::sqrt(3.0)));
  CHECK(l1_recovery_bound(p3) == doctest::Approx(1.5));
  CHECK(l1_recovery_bound(test::laplacian_basis(complete_graph(2), 1)) == doctest::Approx(1.0));
  CHECK(l1_recovery_bound(test::laplacian_basis(complete_graph(2), 2)) == doctest::Approx(0.5));
}

TEST_CASE("uncorrupted bandlimited observation is returned") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(20, 0.3, 2), 4);
  const Vector x = synthesize_bandlimited(b, 6);
  const RecoveryReport r = l1_reconstruct(b, x);
  CHECK(r.converged);
  CHECK((r.x_hat - x).norm() <= 1e-6 * x.norm());
}

TEST_CASE("one corrupted vertex on P3 is removed") {
  const SpectralBasis p3 = test::laplacian_basis(path_graph(3), 1);
  const Vector x = Vector::Constant(3, 0.8);
  Vector y = x;
  y(1) += 5.0;
  const RecoveryReport r = l1_reconstruct(p3, y);
  CHECK(r.converged);
  CHECK((r.x_hat - x).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("exact recovery below the coherence bound") {
  const SpectralBasis b = test::laplacian_basis(path_graph(40), 3);
  const double bound = l1_recovery_bound(b);
  REQUIRE(bound > 3.0);
  Rng rng(19);
  for (Index count = 1; double(count) < bound; ++count) {
    for (int trial = 0; trial < 100; ++trial) {
      const Vector x = synthesize_bandlimited(b, rng.next_u64());
      Vector y = x;
      std::vector<Index> pool;
      for (Index i = 0; i < 40; ++i) pool.push_back(i);
      for (Index k = 0; k < count; ++k) {
        std::swap(pool[size_t(k)], pool[size_t(k + Index(rng.below(std::uint64_t(40 - k))))]);
        y(pool[size_t(k)]) += 20.0 * rng.normal();
      }
      const RecoveryReport r = l1_reconstruct(b, y);
      CHECK((r.x_hat - x).squaredNorm() / x.squaredNorm() <= 1e-10);
    }
  }
}

TEST_CASE("dense corruption breaks recovery") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(30, 0.2, 3), 6);
  const Vector x = synthesize_bandlimited(b, 4);
  Rng rng(1);
  Vector y = x;
  for (Index i = 0; i < 30; i += 2) y(i) += 10.0 * rng.normal();
  const RecoveryReport r = l1_reconstruct(b, y);
  CHECK((r.x_hat - x).squaredNorm() / x.squaredNorm() > 1e-4);
}

TEST_CASE("solver options are validated") {
  const SpectralBasis p3 = test::laplacian_basis(path_graph(3), 1);
  CHECK_THROWS_AS(l1_reconstruct(p3, Vector::Ones(3), {1.0, 2.5, 1e-7, 100}), ConfigError);
  const RecoveryReport capped = l1_reconstruct(p3, (Vector(3) << 1.0, 9.0, -4.0).finished(), {1.0, 1.6, 1e-14, 3});
  CHECK_FALSE(capped.converged);
  CHECK(capped.iterations == 3);
}
