// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "litkg/knowledge_graph.hpp"

namespace litkg {

enum class Facet { EntityName, CoarseType, FineType, RelationSubtype, EventType, Action, PaperId };

std::string_view to_string(Facet f) noexcept;
// Errors: UnknownFacet.
Facet parse_facet(std::string_view text);

struct Constraint {
  Facet facet = Facet::EntityName;
  std::string value;
  auto operator<=>(const Constraint&) const = default;
};

/// Conjunction of constraints; duplicates collapse.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  ConstraintSet& add(Facet facet, std::string value);
  // Wire form `facet:value`. Errors: UnknownFacet, InvalidArgument.
  ConstraintSet& add_wire(std::string_view wire);

  const std::set<Constraint>& constraints() const noexcept { return constraints_; }
  std::size_t size() const noexcept { return constraints_.size(); }
  bool empty() const noexcept { return constraints_.empty(); }

  bool admits(const KnowledgeGraph& graph, const EdgeKey& key, const Provenance& provenance) const;
  bool admits(const KnowledgeGraph& graph, const EventKey& key, const Provenance& provenance) const;

 private:
  std::set<Constraint> constraints_;
};

struct FacetEntry {
  std::string term;
  std::size_t count = 0;
  bool operator==(const FacetEntry&) const = default;
};

struct FacetCounts {
  Facet facet = Facet::EntityName;
  std::vector<FacetEntry> entries;  // count desc, then term
};

/// For each term, the number of admitted assertions (edges and events)
/// carrying it. `limit` = 0 keeps every entry.
FacetCounts facet_counts(const KnowledgeGraph& graph, const ConstraintSet& constraints, Facet facet,
                         std::size_t limit = 0);

struct HeatmapCell {
  Action action = Action::Affect;
  std::size_t support = 0;  // distinct papers
  bool operator==(const HeatmapCell&) const = default;
};

struct HeatmapMatrix {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::map<std::pair<std::string, std::string>, HeatmapCell> cells;
};

/// Rows and columns are names of entities of the given coarse types, joined
/// by admitted direct edges. A cell's action has the largest paper support;
/// ties give Affect. Errors: UnknownFacet.
HeatmapMatrix heatmap(const KnowledgeGraph& graph, const ConstraintSet& constraints, std::string_view row_type,
                      std::string_view col_type);

}  // namespace litkg
