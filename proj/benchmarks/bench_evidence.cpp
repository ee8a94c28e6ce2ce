// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include <benchmark/benchmark.h>

#include "litkg/evidence.hpp"
#include "litkg/service.hpp"

namespace {

using namespace litkg;

const KnowledgeBase& fixture() {
  static const KnowledgeBase kb = DataStore(LITKG_BENCH_DATA_DIR).load();
  return kb;
}

void BM_Embed(benchmark::State& state) {
  const HashingEmbeddingProvider provider(static_cast<std::size_t>(state.range(0)));
  const std::string text = "Losartan inhibited SARS-CoV-2 replication in Vero E6 cells in a cytopathic assay.";
  for (auto _ : state) benchmark::DoNotOptimize(provider.embed(text));
}
BENCHMARK(BM_Embed)->Arg(256)->Arg(1024)->Arg(4096);

void BM_RankEvidenceCold(benchmark::State& state) {
  const auto& kb = fixture();
  const HashingEmbeddingProvider provider;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank_evidence(provider, kb.corpus, "losartan lung injury in mice", std::nullopt, 10));
  }
  state.counters["sentences"] = static_cast<double>(kb.corpus.sentence_count());
}
BENCHMARK(BM_RankEvidenceCold);

void BM_RankEvidenceWarm(benchmark::State& state) {
  const auto& kb = fixture();
  const HashingEmbeddingProvider provider;
  ContextVectorCache cache;
  cache.warm(provider, kb.corpus);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rank_evidence(provider, kb.corpus, "losartan lung injury in mice", std::nullopt, 10, &cache));
  }
}
BENCHMARK(BM_RankEvidenceWarm);

}  // namespace

BENCHMARK_MAIN();
