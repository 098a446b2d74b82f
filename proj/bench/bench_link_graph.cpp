// Serial reference vs OpenMP link graph construction, plus the miners on the
// parallel build. Run: ocsm_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>
#include <omp.h>

#include <map>
#include <memory>
#include <random>
#include <vector>

#include "ocsm/link_graph.hpp"
#include "ocsm/miners.hpp"

namespace {

ocsm::Graph clustered_graph(std::size_t communities, std::size_t size, double p_in, std::size_t background) {
  std::mt19937_64 rng(42);
  std::bernoulli_distribution coin(p_in);
  std::vector<std::pair<ocsm::NodeId, ocsm::NodeId>> pairs;
  for (std::size_t c = 0; c < communities; ++c)
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = i + 1; j < size; ++j)
        if (coin(rng)) pairs.emplace_back(c * size + i, c * size + j);
  std::uniform_int_distribution<ocsm::NodeId> any(0, static_cast<ocsm::NodeId>(communities * size - 1));
  for (std::size_t e = 0; e < background; ++e) pairs.emplace_back(any(rng), any(rng));
  return ocsm::graph_from_pairs(communities * size, pairs);
}

const ocsm::Graph& graph_for(std::int64_t edges_k) {
  static std::map<std::int64_t, ocsm::Graph> cache;
  auto it = cache.find(edges_k);
  if (it == cache.end()) {
    // About edges_k thousand edges, four fifths inside communities of 80.
    const auto communities = static_cast<std::size_t>(edges_k * 1000 * 4 / 5 / 316);
    it = cache.emplace(edges_k, clustered_graph(communities, 80, 0.1, static_cast<std::size_t>(edges_k * 200))).first;
  }
  return it->second;
}

void set_counters(benchmark::State& state, const ocsm::Graph& g) {
  state.counters["edges"] = static_cast<double>(g.edge_count());
  state.counters["threads"] = omp_get_max_threads();
}

void BM_SkeinSerial(benchmark::State& state) {
  const auto& g = graph_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ocsm::reference::build_link_skein(g));
  set_counters(state, g);
}

void BM_SkeinParallel(benchmark::State& state) {
  const auto& g = graph_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ocsm::build_link_skein(g));
  set_counters(state, g);
}

void BM_SpaceSerial(benchmark::State& state) {
  const auto& g = graph_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ocsm::reference::build_link_space(g));
  set_counters(state, g);
}

void BM_SpaceParallel(benchmark::State& state) {
  const auto& g = graph_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ocsm::build_link_space(g));
  set_counters(state, g);
}

void BM_Mine(benchmark::State& state) {
  const auto& g = graph_for(10);
  auto lg = std::make_shared<const ocsm::LinkGraph>(ocsm::build_link_skein(g));
  const auto algo = static_cast<ocsm::Algorithm>(state.range(0));
  state.SetLabel(std::string(ocsm::to_string(algo)));
  for (auto _ : state) benchmark::DoNotOptimize(ocsm::mine(algo, lg, {.k = 3, .t = 10}));
}

}  // namespace

BENCHMARK(BM_SkeinSerial)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SkeinParallel)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpaceSerial)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpaceParallel)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Mine)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
