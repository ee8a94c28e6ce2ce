// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "litkg/export.hpp"

#include <set>
#include <vector>

#include "json_codec.hpp"
#include "litkg/canonical.hpp"
#include "litkg/error.hpp"

namespace litkg {

namespace {

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string dot(const KnowledgeGraph& graph, const std::set<std::string>& nodes, const std::vector<EdgeKey>& edges) {
  std::string out = "digraph litkg {\n";
  for (const auto& id : nodes) {
    const auto* e = graph.find_entity(id);
    if (!e) continue;
    out += "  " + dot_quote(id) + " [label=" + dot_quote(e->name) + ", color=" +
           std::string(node_color(e->coarse_type)) + "];\n";
  }
  for (const auto& key : edges) {
    out += "  " + dot_quote(key.src) + " -> " + dot_quote(key.dst) + " [label=" +
           dot_quote(key.subtype + " " + std::string(action_symbol(key.action))) +
           ", support=" + std::to_string(graph.support(key)) + "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace

ExportFormat parse_export_format(std::string_view s) {
  if (s == "canonical") return ExportFormat::Canonical;
  if (s == "dot" || s == "graph-description") return ExportFormat::Dot;
  throw Error(ErrorCode::UnknownFormat, "unknown export format", std::string(s));
}

std::string_view node_color(CoarseType t) noexcept {
  switch (t) {
    case CoarseType::Chemical: return "red";
    case CoarseType::Gene: return "grey";
    case CoarseType::Disease: return "blue";
    case CoarseType::Organism: return "green";
  }
  return "black";
}

std::string export_canonical(const KnowledgeGraph& graph) { return canonical_dump(graph); }

std::string export_canonical(const KnowledgeGraph& graph, const ScoredSubgraph& subgraph) {
  std::string out = canonical_header_line() + "\n";
  for (const auto& id : subgraph.nodes) {
    if (const auto* e = graph.find_entity(id)) out += canonical_entity_line(*e) + "\n";
  }
  for (const auto& [key, salience] : subgraph.edge_salience) {
    if (const auto* prov = graph.find_edge(key)) out += canonical_edge_line(key, *prov) + "\n";
  }
  for (std::size_t i = 0; i < subgraph.paths.size(); ++i) {
    const auto& p = subgraph.paths[i];
    detail::ordered_json edges = detail::ordered_json::array();
    for (const auto& e : p.edges) edges.push_back(detail::to_json(e));
    detail::ordered_json line = {{"kind", "path"},
                                 {"rank", i + 1},
                                 {"nodes", p.nodes},
                                 {"edges", std::move(edges)},
                                 {"score", p.score.to_string()}};
    out += line.dump() + "\n";
  }
  return out;
}

std::string export_dot(const KnowledgeGraph& graph) {
  std::set<std::string> nodes;
  for (const auto* e : graph.live_entities()) nodes.insert(e->id);
  std::vector<EdgeKey> edges;
  for (const auto& [key, prov] : graph.edges()) edges.push_back(key);
  return dot(graph, nodes, edges);
}

std::string export_dot(const KnowledgeGraph& graph, const ScoredSubgraph& subgraph) {
  std::vector<EdgeKey> edges;
  for (const auto& [key, salience] : subgraph.edge_salience) edges.push_back(key);
  return dot(graph, subgraph.nodes, edges);
}

std::string export_graph(const KnowledgeGraph& graph, ExportFormat format,
                         const std::optional<ScoredSubgraph>& subgraph) {
  if (format == ExportFormat::Canonical) {
    return subgraph ? export_canonical(graph, *subgraph) : export_canonical(graph);
  }
  return subgraph ? export_dot(graph, *subgraph) : export_dot(graph);
}

}  // namespace litkg
