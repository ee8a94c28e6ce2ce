// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "litkg/knowledge_graph.hpp"
#include "litkg/pathrank.hpp"

namespace litkg {

enum class ExportFormat { Canonical, Dot };

// Accepts "canonical" and "dot" / "graph-description". Errors: UnknownFormat.
ExportFormat parse_export_format(std::string_view s);

std::string_view node_color(CoarseType t) noexcept;

/// Canonical line-delimited form. A subgraph export holds its nodes, its
/// edges with full provenance, then one `path` record per ranked path.
std::string export_canonical(const KnowledgeGraph& graph);
std::string export_canonical(const KnowledgeGraph& graph, const ScoredSubgraph& subgraph);

/// Graphviz digraph with node colors by coarse type.
std::string export_dot(const KnowledgeGraph& graph);
std::string export_dot(const KnowledgeGraph& graph, const ScoredSubgraph& subgraph);

std::string export_graph(const KnowledgeGraph& graph, ExportFormat format,
                         const std::optional<ScoredSubgraph>& subgraph = std::nullopt);

}  // namespace litkg
