// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include <benchmark/benchmark.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "litkg/canonical.hpp"
#include "litkg/ingest.hpp"
#include "litkg/knowledge_base.hpp"

namespace {

namespace fs = std::filesystem;
using namespace litkg;

std::vector<std::string> bundle_texts() {
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(fs::path(LITKG_BENCH_DATA_DIR) / "bundles")) {
    if (entry.path().extension() == ".json") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<std::string> out;
  for (const auto& p : paths) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    out.push_back(ss.str());
  }
  return out;
}

void BM_ParseBundles(benchmark::State& state) {
  const auto texts = bundle_texts();
  for (auto _ : state) {
    for (const auto& t : texts) benchmark::DoNotOptimize(parse_document_bundle(t));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(texts.size()));
}
BENCHMARK(BM_ParseBundles);

void BM_IngestBundles(benchmark::State& state) {
  std::vector<DocumentBundle> bundles;
  for (const auto& t : bundle_texts()) bundles.push_back(parse_document_bundle(t));
  for (auto _ : state) {
    KnowledgeBase kb;
    for (const auto& b : bundles) ingest_bundle(kb, b);
    benchmark::DoNotOptimize(kb);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(bundles.size()));
}
BENCHMARK(BM_IngestBundles);

void BM_CanonicalDump(benchmark::State& state) {
  KnowledgeBase kb;
  for (const auto& t : bundle_texts()) ingest_bundle(kb, parse_document_bundle(t));
  for (auto _ : state) benchmark::DoNotOptimize(canonical_dump(kb.graph));
}
BENCHMARK(BM_CanonicalDump);

}  // namespace

BENCHMARK_MAIN();
