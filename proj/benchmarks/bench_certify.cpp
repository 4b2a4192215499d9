#include <benchmark/benchmark.h>

#include "kframe/certify.hpp"
#include "kframe/fuzz.hpp"
#include "kframe/random.hpp"

namespace {

kframe::OperatorFamily random_family(kframe::Rng& rng, kframe::Index d, std::size_t n) {
  std::vector<double> nodes(n), weights(n, 1.0 / static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) nodes[i] = static_cast<double>(i);
  std::vector<kframe::LinOp> ops;
  for (std::size_t i = 0; i < n; ++i) ops.push_back(rng.gaussian(d, d, true));
  return kframe::OperatorFamily(kframe::MeasureSpace(nodes, weights), ops);
}

void BM_Certify(benchmark::State& state) {
  kframe::Rng rng(7);
  const auto d = static_cast<kframe::Index>(state.range(0));
  const auto F = random_family(rng, d, 9);
  const kframe::LinOp K = rng.gaussian(d, d, true);
  for (auto _ : state) benchmark::DoNotOptimize(kframe::certify_k_frame(F, K));
}
BENCHMARK(BM_Certify)->Arg(2)->Arg(6)->Arg(16)->Arg(32);

void BM_Majorization(benchmark::State& state) {
  kframe::Rng rng(11);
  const auto d = static_cast<kframe::Index>(state.range(0));
  const auto F = random_family(rng, d, 9);
  const kframe::LinOp K = rng.gaussian(d, d, true);
  for (auto _ : state) benchmark::DoNotOptimize(kframe::majorization_equivalence(F, K));
}
BENCHMARK(BM_Majorization)->Arg(2)->Arg(6)->Arg(16);

void BM_FuzzInstance(benchmark::State& state) {
  kframe::FuzzConfig cfg;
  cfg.seed = 42;
  const auto& theorem = kframe::fuzz_theorems()[static_cast<std::size_t>(state.range(0))];
  std::size_t idx = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kframe::evaluate_instance(kframe::generate_instance(theorem, cfg, idx++)));
  }
  state.SetLabel(theorem);
}
BENCHMARK(BM_FuzzInstance)->DenseRange(0, 14);

}  // namespace

BENCHMARK_MAIN();
