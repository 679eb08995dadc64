#include <benchmark/benchmark.h>

#include "pushpull/allcast.hpp"
#include "pushpull/flow.hpp"
#include "pushpull/graph_models.hpp"
#include "pushpull/matching.hpp"
#include "pushpull/oracles.hpp"

using namespace pushpull;

static void BM_MaxMatching(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const BipartiteGraph g = gen_bipartite(n, n, 0.3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(max_matching(g).size());
}
BENCHMARK(BM_MaxMatching)->Arg(100)->Arg(400)->Arg(1600);

static void BM_Allcast(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CapGraph g = gen_gnp(n, 0.5, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_allcast(g, AllcastOptions{0, 0.5, 0.25, 2, PullMode::kRestricted}).success);
  }
}
BENCHMARK(BM_Allcast)->Arg(200)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

static void BM_Maxflow(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RelayNetwork net = gen_relay_network(2, n, 0.5, 1);
  FlowOptions o;
  o.p = 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(run_maxflow(net, o).success);
}
BENCHMARK(BM_Maxflow)->Arg(200)->Arg(700)->Unit(benchmark::kMillisecond);

static void BM_StrengthExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CapGraph g = gen_complete_capacitated(n, CapacityDistribution::uniform(0, 1), 1);
  for (auto _ : state) benchmark::DoNotOptimize(strength_exact(g).value);
}
BENCHMARK(BM_StrengthExact)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_TreePack(benchmark::State& state) {
  const CapGraph g = gen_complete_capacitated(static_cast<std::size_t>(state.range(0)),
                                              CapacityDistribution::uniform(0, 1), 1);
  const auto trees = enumerate_trees(g);
  for (auto _ : state) benchmark::DoNotOptimize(tree_pack_lp(g, trees).value);
}
BENCHMARK(BM_TreePack)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
