// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

#include "litkg/error.hpp"
#include "litkg/knowledge_graph.hpp"

namespace litkg::detail {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const ProvenanceRef& ref) {
  ordered_json j = {{"paper_id", ref.paper_id}, {"sentence_idx", ref.sentence_idx}};
  if (ref.char_span) j["char_span"] = {ref.char_span->start, ref.char_span->end};
  return j;
}

inline ordered_json to_json(const Provenance& provenance) {
  ordered_json arr = ordered_json::array();
  for (const auto& ref : provenance) arr.push_back(to_json(ref));
  return arr;
}

inline ordered_json to_json(const EdgeKey& key) {
  return {{"src", key.src},
          {"dst", key.dst},
          {"category", to_string(key.category)},
          {"subtype", key.subtype},
          {"action", to_string(key.action)}};
}

[[noreturn]] inline void schema_error(std::string_view what, std::string_view field) {
  throw Error(ErrorCode::SchemaError, std::string(what), std::string(field));
}

template <typename Json>
const Json& require(const Json& obj, const char* field, std::string_view path) {
  if (!obj.is_object()) schema_error("expected an object", path);
  auto it = obj.find(field);
  if (it == obj.end()) schema_error("missing field", std::string(path) + "." + field);
  return *it;
}

template <typename Json>
std::string require_string(const Json& obj, const char* field, std::string_view path) {
  const auto& v = require(obj, field, path);
  if (!v.is_string()) schema_error("expected a string", std::string(path) + "." + field);
  return v.template get<std::string>();
}

template <typename Json>
std::uint32_t require_index(const Json& obj, const char* field, std::string_view path) {
  const auto& v = require(obj, field, path);
  if (!v.is_number_unsigned() || v.template get<std::uint64_t>() > 0xFFFFFFFFull) {
    schema_error("expected a non-negative integer", std::string(path) + "." + field);
  }
  return v.template get<std::uint32_t>();
}

template <typename Json>
CharSpan parse_span(const Json& v, std::string_view path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_unsigned() || !v[1].is_number_unsigned()) {
    schema_error("expected [start, end]", path);
  }
  CharSpan span{v[0].template get<std::uint32_t>(), v[1].template get<std::uint32_t>()};
  if (span.start >= span.end) schema_error("char_span must satisfy start < end", path);
  return span;
}

template <typename Json>
ProvenanceRef provenance_from_json(const Json& j, std::string_view path) {
  ProvenanceRef ref;
  ref.paper_id = require_string(j, "paper_id", path);
  ref.sentence_idx = require_index(j, "sentence_idx", path);
  if (auto it = j.find("char_span"); it != j.end() && !it->is_null()) {
    ref.char_span = parse_span(*it, std::string(path) + ".char_span");
  }
  return ref;
}

template <typename Json>
EdgeKey edge_key_from_json(const Json& j, std::string_view path) {
  EdgeKey key;
  key.src = require_string(j, "src", path);
  key.dst = require_string(j, "dst", path);
  auto category = parse_category(require_string(j, "category", path));
  if (!category) schema_error("unknown category", std::string(path) + ".category");
  key.category = *category;
  key.subtype = require_string(j, "subtype", path);
  auto action = parse_action(require_string(j, "action", path));
  if (!action) schema_error("unknown action", std::string(path) + ".action");
  key.action = *action;
  return key;
}

}  // namespace litkg::detail
