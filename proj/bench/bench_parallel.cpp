// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "tged/centrality.hpp"
#include "tged/dataset.hpp"
#include "tged/eval.hpp"

namespace {

tged::Graph random_plane_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 3.0);
  std::bernoulli_distribution edge(p);
  tged::Graph g;
  for (std::size_t i = 0; i < n; ++i)
    g.add_node(tged::Point2D{coord(rng), coord(rng)});
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (edge(rng))
        g.add_edge(tged::NodeId{i}, tged::NodeId{j});
  return g;
}

void BM_BetweennessSerial(benchmark::State &state) {
  const auto g = random_plane_graph(state.range(0), 8.0 / state.range(0), 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(tged::betweenness_centrality_serial(g));
}

void BM_BetweennessParallel(benchmark::State &state) {
  const auto g = random_plane_graph(state.range(0), 8.0 / state.range(0), 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(tged::betweenness_centrality(g, 0));
}

BENCHMARK(BM_BetweennessSerial)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BetweennessParallel)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond)->UseRealTime();

// Letter-sized graphs, beam(10) as in the benchmark command.
const std::vector<tged::Graph> &corpus() {
  static const auto c = tged::synthesize_letter_like({.seed = 3, .count = 40}).graphs;
  return c;
}

void BM_DistanceMatrixSerial(benchmark::State &state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        tged::distance_matrix_serial(corpus(), corpus(), {}, tged::SearchSpec::beam(10)));
}

void BM_DistanceMatrixParallel(benchmark::State &state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        tged::distance_matrix(corpus(), corpus(), {}, tged::SearchSpec::beam(10), 0));
}

BENCHMARK(BM_DistanceMatrixSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistanceMatrixParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
