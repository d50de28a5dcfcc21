// Parallel kernels against their serial references.

#include "gsp/adaptive.hpp"
#include "gsp/diffusion.hpp"
#include "gsp/generators.hpp"
#include "gsp/recovery.hpp"
#include "gsp/sampling.hpp"
#include "gsp/spectral.hpp"

#include <benchmark/benchmark.h>

namespace {

gsp::SpectralBasis er_basis(gsp::Index n, gsp::Index k, std::uint64_t seed) {
  const gsp::Graph g = gsp::erdos_renyi(n, 0.2, seed);
  return gsp::spectral_decompose(gsp::make_shift(g, gsp::ShiftKind::laplacian)).with_band(gsp::lowest_band(k));
}

const gsp::SpectralBasis& small_basis() {
  static const gsp::SpectralBasis b = er_basis(16, 3, 7);
  return b;
}

const gsp::SpectralBasis& medium_basis() {
  static const gsp::SpectralBasis b = er_basis(60, 8, 7);
  return b;
}

void BM_ExhaustiveParallel(benchmark::State& st) {
  const gsp::DesignCriterion c{gsp::CriterionKind::d_optimal, gsp::NoiseModel::uniform(16)};
  for (auto _ : st) benchmark::DoNotOptimize(gsp::exhaustive_select(c, small_basis(), 5));
}
void BM_ExhaustiveSerial(benchmark::State& st) {
  const gsp::DesignCriterion c{gsp::CriterionKind::d_optimal, gsp::NoiseModel::uniform(16)};
  for (auto _ : st) benchmark::DoNotOptimize(gsp::serial::exhaustive_select(c, small_basis(), 5));
}

void BM_GreedyParallel(benchmark::State& st) {
  const gsp::DesignCriterion c{gsp::CriterionKind::a_optimal, gsp::NoiseModel::uniform(60)};
  for (auto _ : st) benchmark::DoNotOptimize(gsp::greedy_select(c, medium_basis(), 20));
}
void BM_GreedySerial(benchmark::State& st) {
  const gsp::DesignCriterion c{gsp::CriterionKind::a_optimal, gsp::NoiseModel::uniform(60)};
  for (auto _ : st) benchmark::DoNotOptimize(gsp::serial::greedy_select(c, medium_basis(), 20));
}

void BM_BlueMonteCarloParallel(benchmark::State& st) {
  const auto& b = medium_basis();
  const gsp::VertexSet s = gsp::greedy_select({gsp::CriterionKind::a_optimal, gsp::NoiseModel::uniform(60)}, b, 12);
  const gsp::Vector x = gsp::synthesize_bandlimited(b, 3);
  for (auto _ : st)
    benchmark::DoNotOptimize(gsp::blue_monte_carlo(b, s, gsp::NoiseModel::uniform(60, 0.1), x, 20000, 1));
}
void BM_BlueMonteCarloSerial(benchmark::State& st) {
  const auto& b = medium_basis();
  const gsp::VertexSet s = gsp::greedy_select({gsp::CriterionKind::a_optimal, gsp::NoiseModel::uniform(60)}, b, 12);
  const gsp::Vector x = gsp::synthesize_bandlimited(b, 3);
  for (auto _ : st)
    benchmark::DoNotOptimize(gsp::serial::blue_monte_carlo(b, s, gsp::NoiseModel::uniform(60, 0.1), x, 20000, 1));
}

void BM_LmsReplicasParallel(benchmark::State& st) {
  const auto& b = medium_basis();
  const gsp::Vector x = gsp::synthesize_bandlimited(b, 3);
  for (auto _ : st)
    benchmark::DoNotOptimize(gsp::lms_replicas(b, x, gsp::Vector::Constant(60, 0.5), gsp::NoiseModel::uniform(60, 0.01),
                                               0.1, 2000, 8, 1));
}
void BM_LmsReplicasSerial(benchmark::State& st) {
  const auto& b = medium_basis();
  const gsp::Vector x = gsp::synthesize_bandlimited(b, 3);
  for (auto _ : st)
    benchmark::DoNotOptimize(gsp::serial::lms_replicas(b, x, gsp::Vector::Constant(60, 0.5),
                                                       gsp::NoiseModel::uniform(60, 0.01), 0.1, 2000, 8, 1));
}

struct DiffusionFixture {
  gsp::SpectralBasis basis = medium_basis();
  gsp::CommGraph comm{gsp::erdos_renyi(60, 0.1, 11)};
  gsp::CombinationMatrix w = gsp::metropolis_weights(comm);
  gsp::Vector mask = gsp::Vector::Ones(60);
  gsp::Vector y = gsp::synthesize_bandlimited(medium_basis(), 5);
};

void BM_DiffusionStepParallel(benchmark::State& st) {
  DiffusionFixture f;
  auto nodes = gsp::initial_nodes(f.basis, gsp::Vector::Constant(60, 0.5));
  gsp::MessageBus bus(f.comm, f.basis.bandwidth());
  for (auto _ : st) gsp::diffusion_step(nodes, f.basis, f.w, bus, f.mask, f.y);
}
void BM_DiffusionStepSerial(benchmark::State& st) {
  DiffusionFixture f;
  auto nodes = gsp::initial_nodes(f.basis, gsp::Vector::Constant(60, 0.5));
  for (auto _ : st) gsp::serial::diffusion_step(nodes, f.basis, f.w, f.mask, f.y);
}

}  // namespace

BENCHMARK(BM_ExhaustiveParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExhaustiveSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GreedyParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GreedySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlueMonteCarloParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlueMonteCarloSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LmsReplicasParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LmsReplicasSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiffusionStepParallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DiffusionStepSerial)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
