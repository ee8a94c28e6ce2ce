// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "litkg/pathrank.hpp"

namespace {

using namespace litkg;

constexpr const char* kSubtypes[] = {"increases^expression", "decreases^expression", "affects^binding",
                                     "increases^activity"};

// Gene graph with n nodes and m random edges plus a bridge 1 - n/2 - n; each
// edge cites 1..4 papers.
KnowledgeGraph random_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  KnowledgeGraph g;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = "GENE:" + std::to_string(i + 1);
    g.upsert_entity(EntityRecord{id, id, CoarseType::Gene, {}, {}});
  }
  std::uniform_int_distribution<std::size_t> node(1, n);
  std::uniform_int_distribution<int> papers(1, 4);
  for (std::size_t e = 0; e < m; ++e) {
    AssertionEdge edge{"GENE:" + std::to_string(node(rng)), "GENE:" + std::to_string(node(rng)),
                       Category::GeneChemical, kSubtypes[rng() % 4], Action::Affect, {}};
    const int k = papers(rng);
    for (int p = 0; p < k; ++p) edge.provenance.insert({"P" + std::to_string(rng() % 50), 0, std::nullopt});
    g.add_assertion(edge);
  }
  const std::string mid = "GENE:" + std::to_string(n / 2);
  for (const auto& [a, b] : {std::pair{std::string("GENE:1"), mid}, std::pair{mid, "GENE:" + std::to_string(n)}}) {
    g.add_assertion(AssertionEdge{a, b, Category::GeneChemical, kSubtypes[0], Action::Affect, {{"BRIDGE", 0, std::nullopt}}});
  }
  return g;
}

void BM_EnumeratePaths(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = random_graph(n, n * 3, 42);
  PathQuery q;
  q.src = "GENE:1";
  q.dst = "GENE:" + std::to_string(n);
  q.max_hops = static_cast<int>(state.range(1));
  std::size_t paths = 0;
  for (auto _ : state) {
    auto found = enumerate_paths(g, q);
    paths = found.paths.size();
    benchmark::DoNotOptimize(found);
  }
  state.counters["paths"] = static_cast<double>(paths);
}
BENCHMARK(BM_EnumeratePaths)->ArgsProduct({{50, 200, 1000}, {2, 3, 4}});

void BM_ConnectionSubgraph(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = random_graph(n, n * 3, 7);
  PathQuery q;
  q.src = "GENE:1";
  q.dst = "GENE:" + std::to_string(n);
  q.max_hops = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(connection_subgraph(g, q));
  }
}
BENCHMARK(BM_ConnectionSubgraph)->Arg(50)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
