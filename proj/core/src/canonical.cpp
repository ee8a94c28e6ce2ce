// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "litkg/canonical.hpp"

#include "json_codec.hpp"

namespace litkg {

using detail::ordered_json;

std::string canonical_header_line() {
  return ordered_json{{"kind", "header"}, {"format", "litkg-graph"}, {"version", 1}}.dump();
}

std::string canonical_entity_line(const EntityRecord& entity) {
  ordered_json j = {{"kind", "entity"},
                    {"id", entity.id},
                    {"name", entity.name},
                    {"coarse_type", to_string(entity.coarse_type)},
                    {"fine_types", entity.fine_types},
                    {"aliases", entity.aliases}};
  return j.dump();
}

std::string canonical_edge_line(const EdgeKey& key, const Provenance& provenance) {
  ordered_json j = {{"kind", "edge"}};
  const ordered_json fields = detail::to_json(key);
  for (const auto& [k, v] : fields.items()) j[k] = v;
  j["provenance"] = detail::to_json(provenance);
  return j.dump();
}

std::string canonical_event_line(const EventKey& key, const Provenance& provenance) {
  ordered_json roles = ordered_json::object();
  for (const auto& [role, id] : key.roles) roles[role] = id;
  ordered_json j = {{"kind", "event"},
                    {"event_type", key.event_type},
                    {"trigger", key.trigger},
                    {"roles", std::move(roles)},
                    {"provenance", detail::to_json(provenance)}};
  return j.dump();
}

std::string canonical_dump(const KnowledgeGraph& graph) {
  std::string out = canonical_header_line();
  out += '\n';
  for (const auto* entity : graph.live_entities()) {
    out += canonical_entity_line(*entity);
    out += '\n';
  }
  for (const auto& [key, provenance] : graph.edges()) {
    out += canonical_edge_line(key, provenance);
    out += '\n';
  }
  for (const auto& [key, provenance] : graph.events()) {
    out += canonical_event_line(key, provenance);
    out += '\n';
  }
  return out;
}

namespace {

KnowledgeGraph import_records(std::string_view text, std::shared_ptr<const Registry> registry) {
  KnowledgeGraph graph(std::move(registry));
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);

    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) detail::schema_error("invalid JSON record", where);
    const auto kind = detail::require_string(j, "kind", where);

    if (kind == "header") {
      if (detail::require_string(j, "format", where) != "litkg-graph") {
        detail::schema_error("unexpected format", where);
      }
      saw_header = true;
      continue;
    }
    if (!saw_header) detail::schema_error("missing header record", where);

    auto provenance_of = [&](const ordered_json& rec) {
      Provenance provenance;
      const auto& arr = detail::require(rec, "provenance", where);
      if (!arr.is_array()) detail::schema_error("expected an array", where + ".provenance");
      for (const auto& item : arr) provenance.insert(detail::provenance_from_json(item, where));
      return provenance;
    };

    if (kind == "entity") {
      EntityRecord e;
      e.id = detail::require_string(j, "id", where);
      e.name = detail::require_string(j, "name", where);
      auto coarse = parse_coarse_type(detail::require_string(j, "coarse_type", where));
      if (!coarse) detail::schema_error("unknown coarse_type", where);
      e.coarse_type = *coarse;
      e.fine_types = detail::require(j, "fine_types", where).get<std::set<std::string>>();
      e.aliases = detail::require(j, "aliases", where).get<std::set<std::string>>();
      graph.upsert_entity(e);
    } else if (kind == "edge") {
      auto key = detail::edge_key_from_json(j, where);
      graph.add_assertion(
          AssertionEdge{key.src, key.dst, key.category, key.subtype, key.action, provenance_of(j)});
    } else if (kind == "event") {
      EventAssertion ev;
      ev.event_type = detail::require_string(j, "event_type", where);
      ev.trigger = detail::require_string(j, "trigger", where);
      ev.roles = detail::require(j, "roles", where).get<std::map<std::string, std::string>>();
      ev.provenance = provenance_of(j);
      graph.add_event(ev);
    } else if (kind != "path") {
      detail::schema_error("unknown record kind", where);
    }
  }
  return graph;
}

}  // namespace

KnowledgeGraph import_canonical(std::string_view text, std::shared_ptr<const Registry> registry) {
  try {
    return import_records(text, std::move(registry));
  } catch (const nlohmann::json::exception& e) {
    detail::schema_error(e.what(), "canonical import");
  }
}

}  // namespace litkg
