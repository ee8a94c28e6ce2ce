// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "litkg/error.hpp"
#include "litkg/knowledge_base.hpp"

namespace litkg::testing {

// Code of the litkg::Error thrown by fn; Internal when nothing is thrown.
ErrorCode code_of(const std::function<void()>& fn);

std::filesystem::path fixture_dir();
std::filesystem::path fixture_data_dir();
std::string read_text(const std::filesystem::path& path);

// Every fixture bundle, in file-name order.
std::vector<std::filesystem::path> fixture_bundle_paths();

// Fixture bundles ingested directly, without curated rows.
KnowledgeBase load_fixture_bundles();
// The fixture data directory as the service loads it (bundles + curated rows).
KnowledgeBase load_fixture_datadir();

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

/// A small random multigraph plus an independent record of its edges.
struct RandomGraph {
  struct Edge {
    EdgeKey key;
    std::set<std::string> papers;  // distinct papers backing the edge
  };
  KnowledgeGraph graph;
  std::vector<std::string> nodes;
  std::vector<Edge> edges;  // one entry per distinct key
};

RandomGraph make_random_graph(std::mt19937_64& rng, std::size_t max_nodes, std::size_t max_edges);

/// Generator of small synthetic bundles over a shared entity pool, for
/// ingest and update sequences. Each call yields a fresh JSON text.
class BundleFactory {
 public:
  explicit BundleFactory(std::uint64_t seed) : rng_(seed) {}
  std::string make(const std::string& paper_id);

 private:
  std::mt19937_64 rng_;
  std::uint64_t serial_ = 0;
};

}  // namespace litkg::testing
