// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "litkg/error.hpp"
#include "litkg/knowledge_base.hpp"

namespace litkg {

struct BundleSentence {
  std::uint32_t idx = 0;
  Section section = Section::Body;
  std::string text;
};

struct MentionStub {
  std::uint32_t sentence_idx = 0;
  CharSpan char_span;
  EntityRecord entity;  // id already canonicalized
};

struct RelationStub {
  std::string src;  // canonical ids
  std::string dst;
  Category category = Category::GeneChemical;
  std::string subtype;
  Action action = Action::Affect;
  std::uint32_t sentence_idx = 0;
  std::optional<CharSpan> char_span;
};

struct EventStub {
  std::string event_type;
  std::string trigger;
  std::map<std::string, std::string> roles;  // canonical ids
  std::uint32_t sentence_idx = 0;
  std::optional<CharSpan> char_span;
};

/// One paper, validated: dense sentence indices, in-range spans, canonical ids.
struct DocumentBundle {
  std::string paper_id;
  std::string title;
  std::vector<std::string> authors;
  std::vector<std::string> affiliations;
  std::string acknowledgements;
  std::string pub_date;
  bool peer_reviewed = false;
  std::vector<BundleSentence> sentences;
  std::vector<MentionStub> mentions;
  std::vector<RelationStub> relations;
  std::vector<EventStub> events;
  std::string content_hash;  // SHA-256 of the bytes it was parsed from
};

/// Parses one bundle JSON object. Errors: SchemaError (detail = field path),
/// SpanOutOfRange, NonDenseSentenceIndex, EmptyIdentifier.
///
/// Entity stub ids are canonicalized with canonicalize_id. Relation and event
/// endpoints may name either a raw mention id from the same bundle or an
/// already-namespaced id.
DocumentBundle parse_document_bundle(std::string_view bytes);
DocumentBundle load_document_bundle(const std::filesystem::path& path);

/// Applies the id scheme for a raw identifier:
///   `[CD][0-9]{6,9}`          -> MESH:<raw>
///   digits, Gene / Organism  -> GENE:<raw> / TAX:<raw>
///   already namespaced        -> unchanged
///   anything else             -> LOCAL:<slug> (lower-cased, punctuation
///                                stripped, whitespace runs -> '-')
std::string canonicalize_id(std::string_view raw, CoarseType coarse_type);

struct IngestSummary {
  std::size_t entities_new = 0;
  std::size_t edges_new = 0;
  std::size_t edges_merged = 0;
  std::size_t events_new = 0;
  std::size_t sentences = 0;

  bool operator==(const IngestSummary&) const = default;
};

/// Adds a bundle's entities, relations, events and sentences.
///
/// Re-ingesting identical bytes is a no-op returning an all-zero summary.
/// The same paper_id with a different content hash raises DuplicatePaper.
/// The bundle is fully validated against the graph before any mutation, so
/// a failed ingest leaves the knowledge base untouched.
IngestSummary ingest_bundle(KnowledgeBase& kb, const DocumentBundle& bundle);

struct CtdRow {
  std::string subject_id;
  std::string object_id;
  Category category = Category::GeneChemical;
  std::string subtype;
  Action action = Action::Affect;
  std::string source = std::string(kCuratedSource);
  std::size_t line = 0;  // 1-based line in the source table
};

/// Tab-separated `subject_id object_id category subtype action`; `#` lines
/// and blank lines skipped. Errors: MalformedRow (detail = line number).
std::vector<CtdRow> parse_ctd_table(std::istream& in);
std::vector<CtdRow> load_ctd_table(const std::filesystem::path& path);

struct CtdLinkSummary {
  std::size_t added = 0;
  std::size_t skipped = 0;  // rows with an endpoint not present in the graph
};

/// Joins curated rows onto entities already in the graph. Never creates
/// entities. Provenance of every row is (CTD, 0). A row whose subtype is not
/// in the registry raises MalformedRow.
CtdLinkSummary link_ctd(KnowledgeGraph& graph, std::span<const CtdRow> rows);

/// Drops all curated provenance and joins `rows` again against the current
/// entity set.
CtdLinkSummary relink_ctd(KnowledgeGraph& graph, std::span<const CtdRow> rows);

struct UpdateManifest {
  std::vector<std::filesystem::path> added;
  std::vector<std::string> removed;
  std::vector<std::filesystem::path> updated;
};

UpdateManifest parse_update_manifest(std::string_view json);
UpdateManifest load_update_manifest(const std::filesystem::path& path);

/// A manifest whose bundle files have been read and parsed. Parse failures
/// are kept per file and reported by apply_update.
struct ResolvedBundle {
  std::string source;  // file path or other label
  std::string raw;
  std::optional<DocumentBundle> bundle;
  std::optional<Error> parse_error;
};

struct ResolvedUpdate {
  std::vector<ResolvedBundle> added;
  std::vector<std::string> removed;
  std::vector<ResolvedBundle> updated;
};

ResolvedBundle resolve_bundle(std::string source, std::string raw);

/// Reads manifest files relative to `base_dir`, parsing in parallel.
ResolvedUpdate resolve_manifest(const UpdateManifest& manifest, const std::filesystem::path& base_dir);

struct PaperError {
  std::string paper;  // paper id, or the source label when the id is unknown
  ErrorCode code = ErrorCode::Internal;
  std::string message;
};

struct UpdateSummary {
  std::vector<std::string> removed;
  std::vector<std::string> updated;
  std::vector<std::string> added;
  std::vector<PaperError> errors;
};

/// Removals first, then updates (remove-then-ingest), then additions. Each
/// paper is applied atomically; a failing paper is rolled back and reported
/// while the rest proceed. Throws OverlappingLists if a paper id occurs in
/// more than one list.
UpdateSummary apply_update(KnowledgeBase& kb, const ResolvedUpdate& update);

}  // namespace litkg
