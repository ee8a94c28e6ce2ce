// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "litkg/knowledge_graph.hpp"

namespace litkg {

/// Canonical line-delimited graph form.
///
/// First line is a header record; then live entities sorted by id, edges
/// sorted by edge key, events sorted by event key. Each line is one JSON
/// object whose `kind` is `entity`, `edge` or `event`, with fields in the
/// declaration order of the corresponding record type. Provenance is
/// ordered by (paper_id, sentence_idx).
std::string canonical_header_line();
std::string canonical_entity_line(const EntityRecord& entity);
std::string canonical_edge_line(const EdgeKey& key, const Provenance& provenance);
std::string canonical_event_line(const EventKey& key, const Provenance& provenance);

std::string canonical_dump(const KnowledgeGraph& graph);

/// Rebuilds a graph from its canonical form. Unknown record kinds other than
/// `path` are rejected with SchemaError; `path` records are skipped.
KnowledgeGraph import_canonical(std::string_view text,
                                std::shared_ptr<const Registry> registry = Registry::builtin());

}  // namespace litkg
