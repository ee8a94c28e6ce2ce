// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "litkg/knowledge_graph.hpp"
#include "litkg/rational.hpp"

namespace litkg {

enum class ScoringMode { SumSupport, AvgSupport, MinSupport };

std::string to_string(ScoringMode mode);
std::optional<ScoringMode> parse_scoring_mode(std::string_view s);

inline constexpr std::size_t kDefaultPathBudget = 100000;

struct PathQuery {
  std::string src;
  std::string dst;
  int max_hops = 3;  // [1, 4]
  std::size_t top_k = 20;
  ScoringMode mode = ScoringMode::AvgSupport;
  bool directed = false;
  std::size_t min_edge_support = 1;
  std::optional<std::set<Category>> categories;
  std::size_t budget = kDefaultPathBudget;
};

struct Path {
  std::vector<std::string> nodes;
  std::vector<EdgeKey> edges;  // edges[i] joins nodes[i] and nodes[i+1]
  Rational score;

  std::size_t length() const noexcept { return edges.size(); }
  bool operator==(const Path&) const = default;
};

struct PathEnumeration {
  std::vector<Path> paths;
  bool truncated = false;  // the budget was reached
};

/// Every simple path from src to dst with at most max_hops edges whose edges
/// pass the query filters. Parallel edges yield distinct paths. Self loops
/// are never traversed. Undirected unless `q.directed`.
/// Errors: UnknownEntity, InvalidArgument.
PathEnumeration enumerate_paths(const KnowledgeGraph& graph, const PathQuery& q);

/// Errors: UnknownEdge, InvalidArgument (empty path).
Rational score_path(const KnowledgeGraph& graph, const Path& path, ScoringMode mode);

/// Strict ranking order: score desc, length asc, node ids lex, edge keys lex.
bool ranks_before(const Path& a, const Path& b);

std::vector<Path> rank_paths(std::vector<Path> paths, std::size_t top_k);

struct ScoredSubgraph {
  std::vector<Path> paths;
  std::map<EdgeKey, Rational> edge_salience;
  std::set<std::string> nodes;
  std::map<EdgeKey, std::vector<ProvenanceRef>> evidence;  // up to 3 per edge
  bool truncated = false;
};

inline constexpr std::size_t kEvidencePerEdge = 3;

/// Scores, ranks and keeps the top_k paths; salience sums the scores of the
/// kept paths through each edge. Errors: as enumerate_paths, NoPathFound.
ScoredSubgraph connection_subgraph(const KnowledgeGraph& graph, const PathQuery& q);

}  // namespace litkg
