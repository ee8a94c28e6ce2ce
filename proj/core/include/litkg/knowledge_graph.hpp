// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "litkg/registry.hpp"
#include "litkg/types.hpp"

namespace litkg {

/// Paper id used for provenance of curated (non-literature) relations.
inline constexpr std::string_view kCuratedSource = "CTD";

/// Recognized id schemes: MESH:, GENE:, TAX:, LOCAL: followed by a
/// non-empty remainder without whitespace.
bool is_well_formed_id(std::string_view id) noexcept;

struct ProvenanceRef {
  std::string paper_id;
  std::uint32_t sentence_idx = 0;
  std::optional<CharSpan> char_span;

  auto operator<=>(const ProvenanceRef&) const = default;
  bool operator==(const ProvenanceRef&) const = default;
};

// Ordered by (paper_id, sentence_idx, char_span).
using Provenance = std::set<ProvenanceRef>;

// Number of distinct paper ids in a provenance set.
std::size_t distinct_papers(const Provenance& provenance);

struct EntityRecord {
  std::string id;
  std::string name;
  CoarseType coarse_type = CoarseType::Gene;
  std::set<std::string> fine_types;
  std::set<std::string> aliases;

  bool operator==(const EntityRecord&) const = default;
};

/// Identity of an assertion edge. Two assertions with equal keys are the
/// same edge and merge their provenance.
struct EdgeKey {
  std::string src;
  std::string dst;
  Category category = Category::GeneChemical;
  std::string subtype;
  Action action = Action::Affect;

  bool operator==(const EdgeKey&) const = default;
  // Lexicographic over (src, dst, category name, subtype, action name).
  friend std::strong_ordering operator<=>(const EdgeKey& a, const EdgeKey& b);

  // Tab-joined form, stable across runs.
  std::string to_string() const;
};

struct AssertionEdge {
  std::string src;
  std::string dst;
  Category category = Category::GeneChemical;
  std::string subtype;
  Action action = Action::Affect;
  Provenance provenance;

  EdgeKey key() const { return EdgeKey{src, dst, category, subtype, action}; }
};

struct EventKey {
  std::string event_type;
  std::string trigger;
  std::map<std::string, std::string> roles;  // role name -> entity id

  auto operator<=>(const EventKey&) const = default;
  bool operator==(const EventKey&) const = default;
};

struct EventAssertion {
  std::string event_type;
  std::string trigger;
  std::map<std::string, std::string> roles;
  Provenance provenance;

  EventKey key() const { return EventKey{event_type, trigger, roles}; }
};

struct NeighborFilter {
  std::optional<Category> category;
  std::optional<CoarseType> coarse_type;  // applies to the neighbor
  std::optional<std::size_t> min_support;
};

struct Neighbor {
  EdgeKey edge;
  std::string neighbor;
};

struct RemovalSummary {
  std::size_t edges_deleted = 0;
  std::size_t edges_weakened = 0;
  std::size_t events_deleted = 0;
  std::size_t events_weakened = 0;
  std::vector<std::string> entities_orphaned;

  bool empty() const noexcept {
    return edges_deleted == 0 && edges_weakened == 0 && events_deleted == 0 &&
           events_weakened == 0 && entities_orphaned.empty();
  }
};

struct GraphStats {
  std::size_t diseases = 0;
  std::size_t chemicals = 0;
  std::size_t genes = 0;
  std::size_t organisms = 0;
  std::size_t chemical_gene_links = 0;
  std::size_t chemical_disease_links = 0;
  std::size_t gene_disease_links = 0;
  std::size_t other_links = 0;
  std::size_t events = 0;
  std::size_t papers = 0;

  bool operator==(const GraphStats&) const = default;
};

/// Typed, provenance-tracked multigraph.
///
/// Entities are built from per-source contributions: every upsert names the
/// paper it came from (empty for direct API upserts). The visible record is
/// derived from the live contributions, so removing a paper restores exactly
/// the state that would exist had the paper never been ingested. Entities
/// left with no contribution, no incident edge and no event role are
/// orphaned: retained and resolvable by id, but excluded from counts,
/// dumps and traversal.
class KnowledgeGraph {
 public:
  explicit KnowledgeGraph(std::shared_ptr<const Registry> registry = Registry::builtin());

  const Registry& registry() const noexcept { return *registry_; }
  std::shared_ptr<const Registry> registry_ptr() const noexcept { return registry_; }

  /// Stores or merges an entity. Within one source, re-upserts union
  /// fine types and aliases and keep the first-seen name; across sources the
  /// name of the lexicographically smallest source wins.
  std::string upsert_entity(const EntityRecord& entity, std::string_view source = {});

  EdgeKey add_assertion(const AssertionEdge& edge);
  EventKey add_event(const EventAssertion& event);

  std::size_t support(const EdgeKey& key) const;

  // Incident edges in both directions, sorted by descending support then key.
  std::vector<Neighbor> neighbors(std::string_view id, const NeighborFilter& filter = {}) const;

  RemovalSummary remove_paper(std::string_view paper_id);

  // Exact recount. `papers` counts distinct literature sources, excluding
  // the curated source.
  GraphStats stats() const;

  bool contains_entity(std::string_view id) const;  // live entities only
  const EntityRecord* find_entity(std::string_view id) const;  // includes orphans
  std::vector<const EntityRecord*> live_entities() const;
  std::vector<std::string> orphans() const;

  const std::map<EdgeKey, Provenance>& edges() const noexcept { return edges_; }
  const Provenance* find_edge(const EdgeKey& key) const;
  const std::set<EdgeKey>& incident(std::string_view id) const;

  const std::map<EventKey, Provenance>& events() const noexcept { return events_; }

  // Exact alias (and name) -> live entity ids.
  std::map<std::string, std::vector<std::string>> alias_index() const;

  // Paper ids with any provenance or entity contribution in this graph.
  std::vector<std::string> paper_ids() const;

 private:
  struct EntityState {
    EntityRecord record;
    std::map<std::string, EntityRecord> contributions;  // source -> record
  };
  struct PaperIndex {
    std::set<EdgeKey> edges;
    std::set<EventKey> events;
    std::set<std::string> entities;
  };

  bool is_live(const std::string& id, const EntityState& state) const;
  void recompute(EntityState& state);

  std::shared_ptr<const Registry> registry_;
  std::map<std::string, EntityState, std::less<>> entities_;
  std::map<EdgeKey, Provenance> edges_;
  std::map<EventKey, Provenance> events_;
  std::map<std::string, std::set<EdgeKey>, std::less<>> incident_;
  std::map<std::string, std::set<EventKey>, std::less<>> event_roles_;
  std::map<std::string, PaperIndex, std::less<>> papers_;
};

}  // namespace litkg
