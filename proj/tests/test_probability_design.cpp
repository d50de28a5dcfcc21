#include "gsp/adaptive.hpp"
#include "gsp/rng.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <vector>

using namespace gsp;

namespace {

NoiseModel random_noise(Index n, std::uint64_t seed) {
  Rng rng(seed);
  NoiseModel noise{Vector(n)};
  for (Index i = 0; i < n; ++i) noise.variances(i) = rng.uniform(1e-4, 2e-3);
  return noise;
}

void check_feasible(const ProbabilityDesign& d, const AdaptiveDesignSpec& spec, const SpectralBasis& b) {
  const Matrix& uf = b.band_vectors();
  const Matrix a = uf.transpose() * d.p.asDiagonal() * uf;
  const double lam = Eigen::SelfAdjointEigenSolver<Matrix>(a).eigenvalues()(0);
  const double trace = (uf.transpose() * d.p.cwiseProduct(spec.noise.variances).asDiagonal() * uf).trace();
  CHECK(lam >= d.rate_floor - 1e-6);
  CHECK(trace <= 2 * spec.gamma / spec.mu * lam + 1e-6);
  CHECK(d.p.minCoeff() >= 0.0);
  CHECK((spec.p_max - d.p).minCoeff() >= -1e-12);
  CHECK(d.mse <= spec.gamma * (1 + 1e-9));
  CHECK(d.mse <= d.mse_bound * (1 + 1e-9));
  CHECK(d.total == doctest::Approx(d.p.sum()));
}

}  // namespace

TEST_CASE("designed probabilities are feasible and bracketed") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SpectralBasis b = test::laplacian_basis(erdos_renyi(20, 0.25, seed), 4);
    AdaptiveDesignSpec spec;
    spec.alpha_bar = 0.98;
    spec.gamma = 1e-3;
    spec.mu = 0.1;
    spec.noise = random_noise(20, seed);
    spec.p_max = Vector::Ones(20);
    const ProbabilityDesign d = design_probabilities(spec, b);
    check_feasible(d, spec, b);
    const double c1 = (1 - spec.alpha_bar) / (2 * spec.mu);
    // Tr(U_Fᵀ diag(p) U_F) ≥ |F| λ_min and ||u_i||² ≤ 1 give the lower end;
    // p = c1·1 is feasible here, giving the upper end.
    CHECK(d.total >= 4 * c1 * (1 - 1e-6));
    CHECK(d.total <= 20 * c1 * (1 + 1e-6));
  }
}

TEST_CASE("faster target rates need more samples") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(20, 0.25, 9), 4);
  AdaptiveDesignSpec spec;
  spec.gamma = 1e-3;
  spec.mu = 0.1;
  spec.noise = random_noise(20, 9);
  spec.p_max = Vector::Constant(20, 0.8);
  double previous = 0.0;
  for (double alpha_bar : {0.995, 0.99, 0.98, 0.97, 0.96, 0.95}) {
    spec.alpha_bar = alpha_bar;
    const ProbabilityDesign d = design_probabilities(spec, b);
    check_feasible(d, spec, b);
    CHECK(d.total >= previous * (1 - 1e-6));
    previous = d.total;
  }
}

TEST_CASE("infeasible specifications name their constraint") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(15, 0.3, 2), 3);
  AdaptiveDesignSpec spec;
  spec.alpha_bar = 0.5;
  spec.gamma = 1e-3;
  spec.mu = 0.1;
  spec.noise = NoiseModel::uniform(15, 1e-4);
  spec.p_max = Vector::Ones(15);
  CHECK_THROWS_WITH_AS(design_probabilities(spec, b), doctest::Contains("convergence-rate"), ConfigError);
  spec.alpha_bar = 0.98;
  spec.noise = NoiseModel::uniform(15, 1.0);
  CHECK_THROWS_WITH_AS(design_probabilities(spec, b), doctest::Contains("MSE"), ConfigError);
  spec.noise = NoiseModel::uniform(15, 1e-4);
  spec.p_max = Vector::Zero(15);
  CHECK_THROWS_AS(design_probabilities(spec, b), ConfigError);
  spec.p_max = Vector::Ones(15);
  spec.alpha_bar = 1.0;
  CHECK_THROWS_AS(design_probabilities(spec, b), ConfigError);
}

TEST_CASE("vertices without capacity stay unsampled") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(20, 0.3, 4), 3);
  AdaptiveDesignSpec spec;
  spec.alpha_bar = 0.98;
  spec.gamma = 1e-3;
  spec.mu = 0.1;
  spec.noise = NoiseModel::uniform(20, 5e-4);
  spec.p_max = Vector::Ones(20);
  for (Index i = 0; i < 20; i += 3) spec.p_max(i) = 0.0;
  const ProbabilityDesign d = design_probabilities(spec, b);
  check_feasible(d, spec, b);
  for (Index i = 0; i < 20; i += 3) CHECK(d.p(i) == 0.0);
}
