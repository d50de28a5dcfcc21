#include "gsp/rng.hpp"
#include "gsp/sampling.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace gsp;

namespace {

DesignCriterion unit(CriterionKind k, Index n) { return {k, NoiseModel::uniform(n)}; }

Vector random_interior(Index n, Rng& rng) {
  Vector d(n);
  for (Index i = 0; i < n; ++i) d(i) = rng.uniform(0.2, 0.9);
  return d;
}

}  // namespace

TEST_CASE("capped simplex projection") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 12;
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = rng.uniform(-2.0, 3.0);
    const double total = 1.0 + double(rng.below(10));
    const Vector d = project_capped_simplex(v, total);
    CHECK(std::abs(d.sum() - total) < 1e-9);
    CHECK(d.minCoeff() >= 0.0);
    CHECK(d.maxCoeff() <= 1.0);
    // Variational inequality: (v − d)ᵀ(w − d) ≤ 0 for feasible w.
    for (int k = 0; k < 20; ++k) {
      Vector w(n);
      for (Index i = 0; i < n; ++i) w(i) = rng.uniform(-1.0, 2.0);
      w = project_capped_simplex(w, total);
      CHECK((v - d).dot(w - d) <= 1e-9);
    }
  }
  CHECK(project_capped_simplex(Vector::Constant(4, 5.0), 4.0).isApprox(Vector::Ones(4)));
  CHECK_THROWS_AS(project_capped_simplex(Vector::Zero(3), 4.0), ConfigError);
}

TEST_CASE("analytic gradients match central differences") {
  Rng rng(41);
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(16, 0.3, 3), 4);
  NoiseModel noise{Vector(16)};
  for (Index i = 0; i < 16; ++i) noise.variances(i) = rng.uniform(0.5, 2.0);
  const double h = 1e-5;
  for (auto kind : {CriterionKind::a_optimal, CriterionKind::d_optimal, CriterionKind::e_optimal}) {
    const DesignCriterion c{kind, noise};
    for (int trial = 0; trial < 10; ++trial) {
      const Vector d = random_interior(16, rng);
      const Vector g = relaxed_gradient(c, b, d);
      Vector fd(16);
      for (Index i = 0; i < 16; ++i) {
        Vector up = d, dn = d;
        up(i) += h;
        dn(i) -= h;
        fd(i) = (relaxed_objective(c, b, up) - relaxed_objective(c, b, dn)) / (2 * h);
      }
      INFO(criterion_name(kind));
      CHECK((g - fd).norm() / std::max(fd.norm(), 1e-12) <= 1e-4);
    }
  }
}

TEST_CASE("relaxed objective is infinite where the information matrix is singular") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(10, 0.4, 3), 4);
  Vector d = Vector::Zero(10);
  d(0) = d(1) = 1.0;
  CHECK(std::isinf(relaxed_objective(unit(CriterionKind::a_optimal, 10), b, d)));
  CHECK(std::isinf(relaxed_objective(unit(CriterionKind::d_optimal, 10), b, d)));
}

TEST_CASE("full budget is the unique feasible point") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(9, 0.4, 3), 3);
  for (auto kind : {CriterionKind::a_optimal, CriterionKind::e_optimal, CriterionKind::d_optimal}) {
    const RelaxedSelection r = relaxed_select(unit(kind, 9), b, 9);
    CHECK(r.design.weights.isApprox(Vector::Ones(9)));
    CHECK(r.rounded == VertexSet::all(9));
  }
}

TEST_CASE("relaxed D on K2 splits the budget evenly") {
  const SpectralBasis k2 = test::laplacian_basis(complete_graph(2), 1);
  const RelaxedSelection r = relaxed_select(unit(CriterionKind::d_optimal, 2), k2, 1);
  CHECK(std::abs(r.design.weights(0) - 0.5) < 1e-6);
  CHECK(std::abs(r.design.weights(1) - 0.5) < 1e-6);
  CHECK(r.rounded.members() == std::vector<Index>{0});
}

TEST_CASE("relaxed designs are feasible and beat random sets") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(30, 0.2, 9), 5);
  Rng rng(77);
  for (auto kind : {CriterionKind::a_optimal, CriterionKind::d_optimal, CriterionKind::e_optimal}) {
    const DesignCriterion c = unit(kind, 30);
    const RelaxedSelection r = relaxed_select(c, b, 8);
    CHECK(r.design.weights.minCoeff() >= 0.0);
    CHECK(r.design.weights.maxCoeff() <= 1.0);
    CHECK(std::abs(r.design.weights.sum() - 8.0) <= 1e-6);
    CHECK(r.rounded.size() == 8);
    CHECK(r.rounded_objective == doctest::Approx(objective(c, b, r.rounded)));

    std::vector<double> random_values;
    for (int k = 0; k < 100; ++k) {
      std::vector<Index> pool;
      for (Index i = 0; i < 30; ++i) pool.push_back(i);
      for (Index j = 0; j < 8; ++j) std::swap(pool[size_t(j)], pool[size_t(j + Index(rng.below(std::uint64_t(30 - j))))]);
      pool.resize(8);
      random_values.push_back(objective(c, b, VertexSet(30, pool)));
    }
    std::nth_element(random_values.begin(), random_values.begin() + 50, random_values.end());
    CHECK(r.rounded_objective >= random_values[50]);
  }
}

TEST_CASE("relaxed D optimum bounds every integer design") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(14, 0.3, 2), 3);
  const DesignCriterion c = unit(CriterionKind::d_optimal, 14);
  const RelaxedSelection r = relaxed_select(c, b, 4);
  CHECK(r.design.converged);
  const double relaxed_max = -r.design.objective;
  // Enumerate all 4-subsets of 14 vertices.
  for (unsigned mask = 0; mask < (1u << 14); ++mask) {
    if (__builtin_popcount(mask) != 4) continue;
    Vector d = Vector::Zero(14);
    for (Index i = 0; i < 14; ++i)
      if (mask & (1u << i)) d(i) = 1.0;
    CHECK(relaxed_max >= -relaxed_objective(c, b, d) - 1e-9);
  }
}

TEST_CASE("budget validation") {
  const SpectralBasis b = test::laplacian_basis(path_graph(5), 2);
  CHECK_THROWS_AS(relaxed_select(unit(CriterionKind::a_optimal, 5), b, 0), ConfigError);
  CHECK_THROWS_AS(relaxed_select(unit(CriterionKind::a_optimal, 5), b, 6), ConfigError);
}
