// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "litkg/facets.hpp"

#include <algorithm>
#include <array>

#include "litkg/error.hpp"
#include "text_util.hpp"

namespace litkg {

namespace {

constexpr std::array<std::pair<Facet, std::string_view>, 7> kFacetNames{{
    {Facet::EntityName, "EntityName"},
    {Facet::CoarseType, "CoarseType"},
    {Facet::FineType, "FineType"},
    {Facet::RelationSubtype, "RelationSubtype"},
    {Facet::EventType, "EventType"},
    {Facet::Action, "Action"},
    {Facet::PaperId, "PaperId"},
}};

// What a single assertion exposes to the facet model.
struct View {
  std::vector<const EntityRecord*> entities;
  std::optional<std::string> subtype;
  std::optional<std::string> event_type;
  std::optional<Action> action;
  const Provenance* provenance = nullptr;
};

View view_of(const KnowledgeGraph& graph, const EdgeKey& key, const Provenance& prov) {
  View v;
  for (const auto* id : {&key.src, &key.dst}) {
    if (const auto* e = graph.find_entity(*id)) v.entities.push_back(e);
  }
  v.subtype = key.subtype;
  v.action = key.action;
  v.provenance = &prov;
  return v;
}

View view_of(const KnowledgeGraph& graph, const EventKey& key, const Provenance& prov) {
  View v;
  for (const auto& [role, id] : key.roles) {
    if (const auto* e = graph.find_entity(id)) v.entities.push_back(e);
  }
  v.event_type = key.event_type;
  v.provenance = &prov;
  return v;
}

bool satisfies(const View& v, const Constraint& c) {
  auto any_entity = [&](auto pred) { return std::any_of(v.entities.begin(), v.entities.end(), pred); };
  switch (c.facet) {
    case Facet::EntityName:
      return any_entity([&](const EntityRecord* e) { return e->id == c.value || detail::iequals(e->name, c.value); });
    case Facet::CoarseType:
      return any_entity([&](const EntityRecord* e) { return detail::iequals(to_string(e->coarse_type), c.value); });
    case Facet::FineType:
      return any_entity([&](const EntityRecord* e) { return e->fine_types.count(c.value) > 0; });
    case Facet::RelationSubtype:
      return v.subtype == c.value;
    case Facet::EventType:
      return v.event_type == c.value;
    case Facet::Action:
      return v.action && (detail::iequals(to_string(*v.action), c.value) || action_symbol(*v.action) == c.value);
    case Facet::PaperId:
      return std::any_of(v.provenance->begin(), v.provenance->end(),
                         [&](const ProvenanceRef& r) { return r.paper_id == c.value; });
  }
  return false;
}

std::set<std::string> terms(const View& v, Facet facet) {
  std::set<std::string> out;
  switch (facet) {
    case Facet::EntityName:
      for (const auto* e : v.entities) out.insert(e->name);
      break;
    case Facet::CoarseType:
      for (const auto* e : v.entities) out.insert(std::string(to_string(e->coarse_type)));
      break;
    case Facet::FineType:
      for (const auto* e : v.entities) out.insert(e->fine_types.begin(), e->fine_types.end());
      break;
    case Facet::RelationSubtype:
      if (v.subtype) out.insert(*v.subtype);
      break;
    case Facet::EventType:
      if (v.event_type) out.insert(*v.event_type);
      break;
    case Facet::Action:
      if (v.action) out.insert(std::string(to_string(*v.action)));
      break;
    case Facet::PaperId:
      for (const auto& r : *v.provenance) out.insert(r.paper_id);
      break;
  }
  return out;
}

bool admits_view(const std::set<Constraint>& constraints, const View& v) {
  return std::all_of(constraints.begin(), constraints.end(), [&](const Constraint& c) { return satisfies(v, c); });
}

CoarseType parse_row_type(std::string_view s) {
  for (auto t : {CoarseType::Gene, CoarseType::Disease, CoarseType::Chemical, CoarseType::Organism}) {
    if (detail::iequals(to_string(t), s)) return t;
  }
  if (detail::iequals(s, "protein")) return CoarseType::Gene;
  throw Error(ErrorCode::UnknownFacet, "heatmap axis must be a coarse type", std::string(s));
}

}  // namespace

std::string_view to_string(Facet f) noexcept {
  for (const auto& [facet, name] : kFacetNames) {
    if (facet == f) return name;
  }
  return "EntityName";
}

Facet parse_facet(std::string_view text) {
  for (const auto& [facet, name] : kFacetNames) {
    if (detail::iequals(name, text)) return facet;
  }
  throw Error(ErrorCode::UnknownFacet, "unknown facet", std::string(text));
}

ConstraintSet& ConstraintSet::add(Facet facet, std::string value) {
  constraints_.insert(Constraint{facet, std::move(value)});
  return *this;
}

ConstraintSet& ConstraintSet::add_wire(std::string_view wire) {
  const auto colon = wire.find(':');
  if (colon == std::string_view::npos || colon + 1 == wire.size()) {
    throw Error(ErrorCode::InvalidArgument, "constraint must be facet:value", std::string(wire));
  }
  return add(parse_facet(detail::trim(wire.substr(0, colon))), std::string(wire.substr(colon + 1)));
}

bool ConstraintSet::admits(const KnowledgeGraph& graph, const EdgeKey& key, const Provenance& provenance) const {
  return admits_view(constraints_, view_of(graph, key, provenance));
}

bool ConstraintSet::admits(const KnowledgeGraph& graph, const EventKey& key, const Provenance& provenance) const {
  return admits_view(constraints_, view_of(graph, key, provenance));
}

FacetCounts facet_counts(const KnowledgeGraph& graph, const ConstraintSet& constraints, Facet facet,
                         std::size_t limit) {
  std::map<std::string, std::size_t> counts;
  auto tally = [&](const View& v) {
    if (!admits_view(constraints.constraints(), v)) return;
    for (const auto& t : terms(v, facet)) ++counts[t];
  };
  for (const auto& [key, prov] : graph.edges()) {
    if (graph.contains_entity(key.src) && graph.contains_entity(key.dst)) tally(view_of(graph, key, prov));
  }
  for (const auto& [key, prov] : graph.events()) tally(view_of(graph, key, prov));

  FacetCounts out;
  out.facet = facet;
  for (const auto& [term, n] : counts) out.entries.push_back({term, n});
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const FacetEntry& a, const FacetEntry& b) { return a.count > b.count; });
  if (limit > 0 && out.entries.size() > limit) out.entries.resize(limit);
  return out;
}

HeatmapMatrix heatmap(const KnowledgeGraph& graph, const ConstraintSet& constraints, std::string_view row_type,
                      std::string_view col_type) {
  const auto row_t = parse_row_type(row_type);
  const auto col_t = parse_row_type(col_type);

  struct Tally {
    std::map<Action, std::set<std::string>> papers_by_action;
    std::set<std::string> papers;
  };
  std::map<std::pair<std::string, std::string>, Tally> tallies;
  for (const auto& [key, prov] : graph.edges()) {
    const auto* s = graph.find_entity(key.src);
    const auto* d = graph.find_entity(key.dst);
    if (!s || !d || key.src == key.dst) continue;
    const EntityRecord* row = nullptr;
    const EntityRecord* col = nullptr;
    if (s->coarse_type == row_t && d->coarse_type == col_t) {
      row = s;
      col = d;
    } else if (d->coarse_type == row_t && s->coarse_type == col_t) {
      row = d;
      col = s;
    } else {
      continue;
    }
    if (!constraints.admits(graph, key, prov)) continue;
    auto& t = tallies[{row->name, col->name}];
    for (const auto& r : prov) {
      t.papers_by_action[key.action].insert(r.paper_id);
      t.papers.insert(r.paper_id);
    }
  }

  HeatmapMatrix m;
  std::set<std::string> rows;
  std::set<std::string> cols;
  for (const auto& [cell, t] : tallies) {
    std::size_t best = 0;
    std::size_t best_count = 0;
    Action action = Action::Affect;
    for (const auto& [a, papers] : t.papers_by_action) {
      if (papers.size() > best) {
        best = papers.size();
        best_count = 1;
        action = a;
      } else if (papers.size() == best) {
        ++best_count;
      }
    }
    if (best_count > 1) action = Action::Affect;
    m.cells[cell] = HeatmapCell{action, t.papers.size()};
    rows.insert(cell.first);
    cols.insert(cell.second);
  }
  m.rows.assign(rows.begin(), rows.end());
  m.cols.assign(cols.begin(), cols.end());
  return m;
}

}  // namespace litkg
