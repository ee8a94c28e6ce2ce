// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "litkg/knowledge_graph.hpp"

#include <algorithm>
#include <array>
#include <tuple>

#include "litkg/error.hpp"
#include "text_util.hpp"

namespace litkg {

bool is_well_formed_id(std::string_view id) noexcept {
  static constexpr std::array<std::string_view, 4> kSchemes{"MESH:", "GENE:", "TAX:", "LOCAL:"};
  for (auto scheme : kSchemes) {
    if (id.size() > scheme.size() && id.substr(0, scheme.size()) == scheme) {
      auto rest = id.substr(scheme.size());
      return std::none_of(rest.begin(), rest.end(), [](char c) { return detail::is_space(c); });
    }
  }
  return false;
}

std::size_t distinct_papers(const Provenance& provenance) {
  std::size_t count = 0;
  const std::string* last = nullptr;
  for (const auto& ref : provenance) {
    if (last == nullptr || *last != ref.paper_id) {
      ++count;
      last = &ref.paper_id;
    }
  }
  return count;
}

std::strong_ordering operator<=>(const EdgeKey& a, const EdgeKey& b) {
  return std::forward_as_tuple(a.src, a.dst, to_string(a.category), a.subtype, to_string(a.action)) <=>
         std::forward_as_tuple(b.src, b.dst, to_string(b.category), b.subtype, to_string(b.action));
}

std::string EdgeKey::to_string() const {
  std::string out;
  out.reserve(src.size() + dst.size() + subtype.size() + 32);
  out.append(src).push_back('\t');
  out.append(dst).push_back('\t');
  out.append(litkg::to_string(category)).push_back('\t');
  out.append(subtype).push_back('\t');
  out.append(litkg::to_string(action));
  return out;
}

namespace {

const std::set<EdgeKey> kNoEdges;

void validate_provenance(const Provenance& provenance) {
  if (provenance.empty()) throw Error(ErrorCode::EmptyProvenance, "assertion has no provenance");
  for (const auto& ref : provenance) {
    if (ref.paper_id.empty()) {
      throw Error(ErrorCode::InvalidArgument, "provenance paper_id is empty");
    }
    if (ref.char_span && ref.char_span->start >= ref.char_span->end) {
      throw Error(ErrorCode::InvalidArgument, "provenance char_span must satisfy start < end",
                  ref.paper_id);
    }
  }
}

// Removes every reference to `paper_id`; returns true if anything was erased.
bool strip_paper(Provenance& provenance, std::string_view paper_id) {
  auto first = provenance.lower_bound(ProvenanceRef{std::string(paper_id), 0, std::nullopt});
  auto last = first;
  while (last != provenance.end() && last->paper_id == paper_id) ++last;
  if (first == last) return false;
  provenance.erase(first, last);
  return true;
}

}  // namespace

KnowledgeGraph::KnowledgeGraph(std::shared_ptr<const Registry> registry)
    : registry_(std::move(registry)) {
  if (!registry_) registry_ = Registry::builtin();
}

bool KnowledgeGraph::is_live(const std::string& id, const EntityState& state) const {
  if (!state.contributions.empty()) return true;
  if (auto it = incident_.find(id); it != incident_.end() && !it->second.empty()) return true;
  if (auto it = event_roles_.find(id); it != event_roles_.end() && !it->second.empty()) return true;
  return false;
}

void KnowledgeGraph::recompute(EntityState& state) {
  if (state.contributions.empty()) return;  // keep the last known record
  const auto& primary = state.contributions.begin()->second;
  EntityRecord merged;
  merged.id = state.record.id;
  merged.name = primary.name;
  merged.coarse_type = primary.coarse_type;
  for (const auto& [source, contribution] : state.contributions) {
    merged.fine_types.insert(contribution.fine_types.begin(), contribution.fine_types.end());
    merged.aliases.insert(contribution.aliases.begin(), contribution.aliases.end());
  }
  state.record = std::move(merged);
}

std::string KnowledgeGraph::upsert_entity(const EntityRecord& entity, std::string_view source) {
  if (!is_well_formed_id(entity.id)) {
    throw Error(ErrorCode::MalformedId, "entity id lacks a recognized scheme prefix", entity.id);
  }
  auto name = detail::trim(entity.name);
  if (name.empty()) throw Error(ErrorCode::InvalidArgument, "entity name is empty", entity.id);

  EntityRecord contribution;
  contribution.id = entity.id;
  contribution.name = std::string(name);
  contribution.coarse_type = entity.coarse_type;
  for (const auto& f : entity.fine_types) {
    if (!f.empty()) contribution.fine_types.insert(f);
  }
  for (const auto& a : entity.aliases) {
    if (!detail::trim(a).empty()) contribution.aliases.insert(a);
  }
  contribution.aliases.insert(contribution.name);

  auto [it, inserted] = entities_.try_emplace(entity.id);
  auto& state = it->second;
  if (inserted) state.record = contribution;

  auto [cit, fresh] = state.contributions.try_emplace(std::string(source), contribution);
  if (!fresh) {
    cit->second.fine_types.insert(contribution.fine_types.begin(), contribution.fine_types.end());
    cit->second.aliases.insert(contribution.aliases.begin(), contribution.aliases.end());
  }
  recompute(state);
  if (!source.empty()) papers_[std::string(source)].entities.insert(entity.id);
  return entity.id;
}

EdgeKey KnowledgeGraph::add_assertion(const AssertionEdge& edge) {
  for (const auto* id : {&edge.src, &edge.dst}) {
    if (!contains_entity(*id)) throw Error(ErrorCode::UnknownEntity, "unknown entity", *id);
  }
  if (!registry_->accepts(edge.category == Category::Event, edge.subtype)) {
    throw Error(ErrorCode::UnknownSubtype, "subtype not in registry", edge.subtype);
  }
  validate_provenance(edge.provenance);

  auto key = edge.key();
  auto& provenance = edges_[key];
  provenance.insert(edge.provenance.begin(), edge.provenance.end());
  incident_[key.src].insert(key);
  incident_[key.dst].insert(key);
  for (const auto& ref : edge.provenance) papers_[ref.paper_id].edges.insert(key);
  return key;
}

EventKey KnowledgeGraph::add_event(const EventAssertion& event) {
  if (!registry_->events.contains(event.event_type)) {
    throw Error(ErrorCode::UnknownSubtype, "event type not in registry", event.event_type);
  }
  if (event.roles.empty()) throw Error(ErrorCode::InvalidArgument, "event has no roles", event.event_type);
  for (const auto& [role, id] : event.roles) {
    if (!contains_entity(id)) throw Error(ErrorCode::UnknownEntity, "unknown event role entity", id);
  }
  validate_provenance(event.provenance);

  auto key = event.key();
  auto& provenance = events_[key];
  provenance.insert(event.provenance.begin(), event.provenance.end());
  for (const auto& [role, id] : key.roles) event_roles_[id].insert(key);
  for (const auto& ref : event.provenance) papers_[ref.paper_id].events.insert(key);
  return key;
}

std::size_t KnowledgeGraph::support(const EdgeKey& key) const {
  auto it = edges_.find(key);
  if (it == edges_.end()) throw Error(ErrorCode::UnknownEdge, "unknown edge", key.to_string());
  return distinct_papers(it->second);
}

std::vector<Neighbor> KnowledgeGraph::neighbors(std::string_view id, const NeighborFilter& filter) const {
  if (find_entity(id) == nullptr) throw Error(ErrorCode::UnknownEntity, "unknown entity", std::string(id));

  struct Candidate {
    std::size_t support;
    Neighbor neighbor;
  };
  std::vector<Candidate> found;
  for (const auto& key : incident(id)) {
    if (filter.category && key.category != *filter.category) continue;
    const std::string& other = key.src == id ? key.dst : key.src;
    if (filter.coarse_type) {
      const auto* rec = find_entity(other);
      if (rec == nullptr || rec->coarse_type != *filter.coarse_type) continue;
    }
    auto s = distinct_papers(edges_.at(key));
    if (filter.min_support && s < *filter.min_support) continue;
    found.push_back({s, Neighbor{key, other}});
  }
  std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    if (a.support != b.support) return a.support > b.support;
    return a.neighbor.edge < b.neighbor.edge;
  });

  std::vector<Neighbor> out;
  out.reserve(found.size());
  for (auto& c : found) out.push_back(std::move(c.neighbor));
  return out;
}

RemovalSummary KnowledgeGraph::remove_paper(std::string_view paper_id) {
  RemovalSummary summary;
  auto pit = papers_.find(paper_id);
  if (pit == papers_.end()) return summary;
  PaperIndex index = std::move(pit->second);
  papers_.erase(pit);

  std::set<std::string> touched;

  for (const auto& key : index.edges) {
    auto eit = edges_.find(key);
    if (eit == edges_.end() || !strip_paper(eit->second, paper_id)) continue;
    if (!eit->second.empty()) {
      ++summary.edges_weakened;
      continue;
    }
    edges_.erase(eit);
    ++summary.edges_deleted;
    for (const auto* endpoint : {&key.src, &key.dst}) {
      touched.insert(*endpoint);
      if (auto iit = incident_.find(*endpoint); iit != incident_.end()) {
        iit->second.erase(key);
        if (iit->second.empty()) incident_.erase(iit);
      }
    }
  }

  for (const auto& key : index.events) {
    auto eit = events_.find(key);
    if (eit == events_.end() || !strip_paper(eit->second, paper_id)) continue;
    if (!eit->second.empty()) {
      ++summary.events_weakened;
      continue;
    }
    events_.erase(eit);
    ++summary.events_deleted;
    for (const auto& [role, id] : key.roles) {
      touched.insert(id);
      if (auto rit = event_roles_.find(id); rit != event_roles_.end()) {
        rit->second.erase(key);
        if (rit->second.empty()) event_roles_.erase(rit);
      }
    }
  }

  for (const auto& id : index.entities) {
    auto it = entities_.find(id);
    if (it == entities_.end()) continue;
    if (it->second.contributions.erase(std::string(paper_id)) > 0) {
      recompute(it->second);
      touched.insert(id);
    }
  }

  for (const auto& id : touched) {
    auto it = entities_.find(id);
    if (it != entities_.end() && !is_live(id, it->second)) summary.entities_orphaned.push_back(id);
  }
  return summary;
}

GraphStats KnowledgeGraph::stats() const {
  GraphStats s;
  std::set<std::string_view> papers;
  for (const auto& [id, state] : entities_) {
    for (const auto& [source, contribution] : state.contributions) {
      if (!source.empty()) papers.insert(source);
    }
    if (!is_live(id, state)) continue;
    switch (state.record.coarse_type) {
      case CoarseType::Disease:
        ++s.diseases;
        break;
      case CoarseType::Chemical:
        ++s.chemicals;
        break;
      case CoarseType::Gene:
        ++s.genes;
        break;
      case CoarseType::Organism:
        ++s.organisms;
        break;
    }
  }
  for (const auto& [key, provenance] : edges_) {
    switch (key.category) {
      case Category::GeneChemical:
        ++s.chemical_gene_links;
        break;
      case Category::ChemicalDisease:
        ++s.chemical_disease_links;
        break;
      case Category::GeneDisease:
        ++s.gene_disease_links;
        break;
      default:
        ++s.other_links;
        break;
    }
    for (const auto& ref : provenance) papers.insert(ref.paper_id);
  }
  for (const auto& [key, provenance] : events_) {
    ++s.events;
    for (const auto& ref : provenance) papers.insert(ref.paper_id);
  }
  papers.erase(kCuratedSource);
  s.papers = papers.size();
  return s;
}

bool KnowledgeGraph::contains_entity(std::string_view id) const {
  auto it = entities_.find(id);
  return it != entities_.end() && is_live(it->first, it->second);
}

const EntityRecord* KnowledgeGraph::find_entity(std::string_view id) const {
  auto it = entities_.find(id);
  return it == entities_.end() ? nullptr : &it->second.record;
}

std::vector<const EntityRecord*> KnowledgeGraph::live_entities() const {
  std::vector<const EntityRecord*> out;
  out.reserve(entities_.size());
  for (const auto& [id, state] : entities_) {
    if (is_live(id, state)) out.push_back(&state.record);
  }
  return out;
}

std::vector<std::string> KnowledgeGraph::orphans() const {
  std::vector<std::string> out;
  for (const auto& [id, state] : entities_) {
    if (!is_live(id, state)) out.push_back(id);
  }
  return out;
}

const Provenance* KnowledgeGraph::find_edge(const EdgeKey& key) const {
  auto it = edges_.find(key);
  return it == edges_.end() ? nullptr : &it->second;
}

const std::set<EdgeKey>& KnowledgeGraph::incident(std::string_view id) const {
  auto it = incident_.find(id);
  return it == incident_.end() ? kNoEdges : it->second;
}

std::map<std::string, std::vector<std::string>> KnowledgeGraph::alias_index() const {
  std::map<std::string, std::vector<std::string>> index;
  for (const auto* rec : live_entities()) {
    std::set<std::string> keys(rec->aliases.begin(), rec->aliases.end());
    keys.insert(rec->name);
    for (const auto& key : keys) index[key].push_back(rec->id);
  }
  return index;
}

std::vector<std::string> KnowledgeGraph::paper_ids() const {
  std::vector<std::string> out;
  out.reserve(papers_.size());
  for (const auto& [id, index] : papers_) out.push_back(id);
  return out;
}

}  // namespace litkg
