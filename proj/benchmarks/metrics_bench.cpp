#include <benchmark/benchmark.h>

#include <random>

#include "commprof/detectors.hpp"
#include "commprof/generators.hpp"
#include "commprof/quality.hpp"
#include "commprof/size_similarity.hpp"
#include "commprof/validation.hpp"

namespace {

using namespace commprof;

Partition random_partition(std::size_t n, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, k - 1);
  std::vector<int> labels(n);
  for (auto& l : labels) l = pick(rng);
  return Partition::from_labels(labels);
}

void BM_QualityAll(benchmark::State& state) {
  const auto g = random_sparse_graph(static_cast<std::size_t>(state.range(0)), 10.0, 3);
  DetectorSpec spec;
  spec.seed = 1;
  const auto p = detect(g, spec);
  for (auto _ : state) benchmark::DoNotOptimize(score_partition(g, p, kAllQualityMetrics));
}

void BM_SurpriseExact(benchmark::State& state) {
  const auto g = random_sparse_graph(static_cast<std::size_t>(state.range(0)), 10.0, 3);
  const auto p = random_partition(g.node_count(), 20, 5);
  for (auto _ : state) benchmark::DoNotOptimize(surprise_exact(g, p));
}

void BM_Ami(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ContingencyTable t(random_partition(n, 30, 1), random_partition(n, 40, 2));
  for (auto _ : state) benchmark::DoNotOptimize(ami(t));
}

void BM_KdeOverlap(benchmark::State& state) {
  std::mt19937_64 rng(9);
  std::vector<std::size_t> a(static_cast<std::size_t>(state.range(0)));
  std::vector<std::size_t> b(a.size());
  for (auto& x : a) x = 1 + rng() % 200;
  for (auto& x : b) x = 1 + rng() % 300;
  const auto sa = SizeMultiset::from_sizes(a);
  const auto sb = SizeMultiset::from_sizes(b);
  for (auto _ : state) benchmark::DoNotOptimize(kde_overlap_similarity(sa, sb));
}

}  // namespace

BENCHMARK(BM_QualityAll)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SurpriseExact)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Ami)->Range(1 << 8, 1 << 14)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_KdeOverlap)->Range(16, 1024)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
