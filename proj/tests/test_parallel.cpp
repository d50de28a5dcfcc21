#include "gsp/diffusion.hpp"
#include "gsp/recovery.hpp"
#include "gsp/sampling.hpp"
#include "helpers.hpp"

#include <doctest.h>
#include <omp.h>

#include <vector>

using namespace gsp;

namespace {

/// Runs `f` with 1 and with 4 threads and returns both results.
template <class F>
auto both_thread_counts(F&& f) {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  auto one = f();
  omp_set_num_threads(4);
  auto four = f();
  omp_set_num_threads(saved);
  return std::pair{one, four};
}

}  // namespace

TEST_CASE("exhaustive and greedy selection match their serial versions") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(14, 0.3, 3), 3);
  for (CriterionKind k : {CriterionKind::a_optimal, CriterionKind::e_optimal, CriterionKind::d_optimal}) {
    const DesignCriterion c{k, NoiseModel::uniform(14)};
    const auto [e1, e4] = both_thread_counts([&] { return exhaustive_select(c, b, 5); });
    CHECK(e1 == serial::exhaustive_select(c, b, 5));
    CHECK(e4 == e1);
    const auto [g1, g4] = both_thread_counts([&] { return greedy_select(c, b, 7); });
    CHECK(g1 == serial::greedy_select(c, b, 7));
    CHECK(g4 == g1);
  }
}

TEST_CASE("BLUE Monte Carlo is thread-count independent") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(15, 0.3, 2), 3);
  const NoiseModel noise = NoiseModel::uniform(15, 0.2);
  const VertexSet s = greedy_select({CriterionKind::a_optimal, noise}, b, 6);
  const Vector x = synthesize_bandlimited(b, 1);
  const auto [m1, m4] = both_thread_counts([&] { return blue_monte_carlo(b, s, noise, x, 5000, 9); });
  const MonteCarloMse ref = serial::blue_monte_carlo(b, s, noise, x, 5000, 9);
  // Blocked reduction: bitwise stable across thread counts, equal to the
  // single running sum up to rounding.
  CHECK(m1.mse == m4.mse);
  CHECK(m1.std_error == m4.std_error);
  CHECK(m1.mean_estimate == m4.mean_estimate);
  CHECK(m4.mse == doctest::Approx(ref.mse).epsilon(1e-12));
  CHECK(m4.std_error == doctest::Approx(ref.std_error).epsilon(1e-9));
  CHECK((m4.mean_estimate - ref.mean_estimate).norm() <= 1e-12 * ref.mean_estimate.norm());
}

TEST_CASE("LMS replicas are thread-count independent") {
  const SpectralBasis b = test::laplacian_basis(erdos_renyi(15, 0.3, 4), 3);
  const Vector x = synthesize_bandlimited(b, 2);
  const Vector p = Vector::Constant(15, 0.5);
  const NoiseModel noise = NoiseModel::uniform(15, 0.01);
  const auto [r1, r4] = both_thread_counts([&] { return lms_replicas(b, x, p, noise, 0.1, 300, 6, 5); });
  const ReplicaStudy ref = serial::lms_replicas(b, x, p, noise, 0.1, 300, 6, 5);
  CHECK(r1.mean_curve == ref.mean_curve);
  CHECK(r4.mean_curve == ref.mean_curve);
  CHECK(r4.steady_state == ref.steady_state);
}

TEST_CASE("diffusion round matches the dense serial round") {
  const Graph pg = erdos_renyi(20, 0.25, 5);
  const CommGraph comm(erdos_renyi(20, 0.2, 50));
  const SpectralBasis b = test::laplacian_basis(pg, 4);
  const CombinationMatrix w = metropolis_weights(comm);
  const ProbabilisticSampler s = ProbabilisticSampler::uniform(20, 0.6, 3);
  const NoiseModel noise = NoiseModel::uniform(20, 0.01);
  const Vector x = synthesize_bandlimited(b, 6);
  std::vector<NodeState> par = initial_nodes(b, Vector::Constant(20, 0.8));
  std::vector<NodeState> ser = par;
  MessageBus bus(comm, 4);
  omp_set_num_threads(4);
  for (std::uint64_t t = 0; t < 50; ++t) {
    const Observation o = observe(x, s, noise, t);
    diffusion_step(par, b, w, bus, o.mask, o.y);
    serial::diffusion_step(ser, b, w, o.mask, o.y);
  }
  for (size_t i = 0; i < par.size(); ++i) CHECK((par[i].s - ser[i].s).norm() <= 1e-12);
}
