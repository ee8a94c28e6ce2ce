// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "litkg/ingest.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <future>
#include <istream>
#include <regex>
#include <set>
#include <sstream>

#include "json_codec.hpp"
#include "litkg/digest.hpp"
#include "text_util.hpp"

namespace litkg {

using detail::schema_error;
using json = nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::SchemaError, "cannot read file", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool is_mesh_uid(std::string_view s) {
  static const std::regex kMesh("[CD][0-9]{6,9}");
  return std::regex_match(s.begin(), s.end(), kMesh);
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_iso_date(std::string_view s) {
  static const std::regex kDate(R"(\d{4}-\d{2}-\d{2}(T[0-9:.]+(Z|[+-]\d{2}:?\d{2})?)?)");
  return std::regex_match(s.begin(), s.end(), kDate);
}

std::vector<std::string> string_list(const json& obj, const char* field, const std::string& path) {
  const auto& v = detail::require(obj, field, path);
  if (!v.is_array()) schema_error("expected an array of strings", path + "." + field);
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) schema_error("expected an array of strings", path + "." + field);
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::set<std::string> optional_string_set(const json& obj, const char* field, const std::string& path) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_array()) schema_error("expected an array of strings", path + "." + field);
  std::set<std::string> out;
  for (const auto& item : *it) {
    if (!item.is_string()) schema_error("expected an array of strings", path + "." + field);
    if (!item.get<std::string>().empty()) out.insert(item.get<std::string>());
  }
  return out;
}

void check_span(const CharSpan& span, const BundleSentence& sentence, const std::string& path) {
  if (span.end > sentence.text.size()) {
    throw Error(ErrorCode::SpanOutOfRange, "char_span exceeds sentence length", path);
  }
}

void check_sentence_idx(std::uint32_t idx, std::size_t n, const std::string& path) {
  if (idx >= n) throw Error(ErrorCode::SpanOutOfRange, "sentence_idx out of range", path);
}

constexpr std::array<const char*, 11> kBundleFields{
    "paper_id",     "title",         "authors",   "affiliations", "acknowledgements", "pub_date",
    "peer_reviewed", "sentences",    "mentions",  "relations",    "events"};

DocumentBundle parse_bundle_json(const json& root) {
  const std::string path = "$";
  if (!root.is_object()) schema_error("bundle must be a JSON object", path);
  for (const auto& [key, value] : root.items()) {
    if (std::find(kBundleFields.begin(), kBundleFields.end(), key) == kBundleFields.end()) {
      schema_error("unknown field", path + "." + key);
    }
  }

  DocumentBundle b;
  b.paper_id = detail::require_string(root, "paper_id", path);
  if (detail::trim(b.paper_id).empty()) schema_error("paper_id is empty", "$.paper_id");
  if (b.paper_id == kCuratedSource) schema_error("paper_id is reserved", "$.paper_id");
  b.title = detail::require_string(root, "title", path);
  b.authors = string_list(root, "authors", path);
  b.affiliations = string_list(root, "affiliations", path);
  b.acknowledgements = detail::require_string(root, "acknowledgements", path);
  b.pub_date = detail::require_string(root, "pub_date", path);
  if (!is_iso_date(b.pub_date)) schema_error("pub_date is not an ISO-8601 date", "$.pub_date");
  const auto& reviewed = detail::require(root, "peer_reviewed", path);
  if (!reviewed.is_boolean()) schema_error("expected a boolean", "$.peer_reviewed");
  b.peer_reviewed = reviewed.get<bool>();

  const auto& sentences = detail::require(root, "sentences", path);
  if (!sentences.is_array()) schema_error("expected an array", "$.sentences");
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const std::string p = "$.sentences[" + std::to_string(i) + "]";
    BundleSentence s;
    s.idx = detail::require_index(sentences[i], "idx", p);
    auto section = parse_section(detail::require_string(sentences[i], "section", p));
    if (!section) schema_error("unknown section", p + ".section");
    s.section = *section;
    s.text = detail::require_string(sentences[i], "text", p);
    b.sentences.push_back(std::move(s));
  }
  std::sort(b.sentences.begin(), b.sentences.end(),
            [](const BundleSentence& x, const BundleSentence& y) { return x.idx < y.idx; });
  for (std::size_t i = 0; i < b.sentences.size(); ++i) {
    if (b.sentences[i].idx != i) {
      throw Error(ErrorCode::NonDenseSentenceIndex, "sentence indices must be 0..n-1 without gaps",
                  "$.sentences idx " + std::to_string(b.sentences[i].idx));
    }
  }
  const std::size_t n = b.sentences.size();

  // Raw mention id -> canonical id, for resolving relation and event endpoints.
  std::map<std::string, std::string> raw_ids;

  const auto& mentions = detail::require(root, "mentions", path);
  if (!mentions.is_array()) schema_error("expected an array", "$.mentions");
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    const std::string p = "$.mentions[" + std::to_string(i) + "]";
    MentionStub m;
    m.sentence_idx = detail::require_index(mentions[i], "sentence_idx", p);
    m.char_span = detail::parse_span(detail::require(mentions[i], "char_span", p), p + ".char_span");
    check_sentence_idx(m.sentence_idx, n, p + ".sentence_idx");
    check_span(m.char_span, b.sentences[m.sentence_idx], p + ".char_span");

    const std::string ep = p + ".entity";
    const auto& entity = detail::require(mentions[i], "entity", p);
    const auto raw = detail::require_string(entity, "id", ep);
    auto coarse = parse_coarse_type(detail::require_string(entity, "coarse_type", ep));
    if (!coarse) schema_error("unknown coarse_type", ep + ".coarse_type");
    m.entity.coarse_type = *coarse;
    m.entity.id = canonicalize_id(raw, *coarse);
    m.entity.name = detail::require_string(entity, "name", ep);
    if (detail::trim(m.entity.name).empty()) schema_error("entity name is empty", ep + ".name");
    m.entity.fine_types = optional_string_set(entity, "fine_types", ep);
    m.entity.aliases = optional_string_set(entity, "aliases", ep);

    auto [it, inserted] = raw_ids.emplace(raw, m.entity.id);
    if (!inserted && it->second != m.entity.id) {
      schema_error("raw id maps to different canonical ids", ep + ".id");
    }
    b.mentions.push_back(std::move(m));
  }

  auto resolve = [&](const std::string& ref, const std::string& where) {
    if (auto it = raw_ids.find(ref); it != raw_ids.end()) return it->second;
    if (is_well_formed_id(ref)) return ref;
    schema_error("endpoint is neither a mention id nor a namespaced id", where);
  };

  const auto& relations = detail::require(root, "relations", path);
  if (!relations.is_array()) schema_error("expected an array", "$.relations");
  for (std::size_t i = 0; i < relations.size(); ++i) {
    const std::string p = "$.relations[" + std::to_string(i) + "]";
    const auto& r = relations[i];
    RelationStub rel;
    rel.src = resolve(detail::require_string(r, "src", p), p + ".src");
    rel.dst = resolve(detail::require_string(r, "dst", p), p + ".dst");
    auto category = parse_category(detail::require_string(r, "category", p));
    if (!category) schema_error("unknown category", p + ".category");
    rel.category = *category;
    rel.subtype = detail::require_string(r, "subtype", p);
    auto action = parse_action(detail::require_string(r, "action", p));
    if (!action) schema_error("unknown action", p + ".action");
    rel.action = *action;
    rel.sentence_idx = detail::require_index(r, "sentence_idx", p);
    check_sentence_idx(rel.sentence_idx, n, p + ".sentence_idx");
    if (auto it = r.find("char_span"); it != r.end() && !it->is_null()) {
      rel.char_span = detail::parse_span(*it, p + ".char_span");
      check_span(*rel.char_span, b.sentences[rel.sentence_idx], p + ".char_span");
    }
    b.relations.push_back(std::move(rel));
  }

  const auto& events = detail::require(root, "events", path);
  if (!events.is_array()) schema_error("expected an array", "$.events");
  for (std::size_t i = 0; i < events.size(); ++i) {
    const std::string p = "$.events[" + std::to_string(i) + "]";
    const auto& e = events[i];
    EventStub ev;
    ev.event_type = detail::require_string(e, "event_type", p);
    ev.trigger = detail::require_string(e, "trigger", p);
    const auto& roles = detail::require(e, "roles", p);
    if (!roles.is_object() || roles.empty()) schema_error("roles must be a non-empty object", p + ".roles");
    for (const auto& [role, id] : roles.items()) {
      if (!id.is_string()) schema_error("role entity must be a string", p + ".roles." + role);
      ev.roles[role] = resolve(id.get<std::string>(), p + ".roles." + role);
    }
    ev.sentence_idx = detail::require_index(e, "sentence_idx", p);
    check_sentence_idx(ev.sentence_idx, n, p + ".sentence_idx");
    if (auto it = e.find("char_span"); it != e.end() && !it->is_null()) {
      ev.char_span = detail::parse_span(*it, p + ".char_span");
      check_span(*ev.char_span, b.sentences[ev.sentence_idx], p + ".char_span");
    }
    b.events.push_back(std::move(ev));
  }
  return b;
}

// Keeps the longest of any overlapping mentions; ties go to the earlier start.
std::vector<MentionRecord> resolve_overlaps(std::vector<MentionRecord> mentions) {
  std::stable_sort(mentions.begin(), mentions.end(), [](const MentionRecord& a, const MentionRecord& b) {
    if (a.char_span.length() != b.char_span.length()) return a.char_span.length() > b.char_span.length();
    return a.char_span.start < b.char_span.start;
  });
  std::vector<MentionRecord> kept;
  for (auto& m : mentions) {
    bool clash = std::any_of(kept.begin(), kept.end(),
                             [&](const MentionRecord& k) { return k.char_span.overlaps(m.char_span); });
    if (!clash) kept.push_back(std::move(m));
  }
  std::sort(kept.begin(), kept.end(), [](const MentionRecord& a, const MentionRecord& b) {
    return std::tie(a.char_span, a.entity_id) < std::tie(b.char_span, b.entity_id);
  });
  return kept;
}

}  // namespace

DocumentBundle parse_document_bundle(std::string_view bytes) {
  json root = json::parse(bytes.begin(), bytes.end(), nullptr, false);
  if (root.is_discarded()) schema_error("invalid JSON", "$");
  DocumentBundle bundle;
  try {
    bundle = parse_bundle_json(root);
  } catch (const json::exception& e) {
    schema_error(e.what(), "$");
  }
  bundle.content_hash = sha256_hex(bytes);
  return bundle;
}

DocumentBundle load_document_bundle(const std::filesystem::path& path) {
  return parse_document_bundle(read_file(path));
}

std::string canonicalize_id(std::string_view raw, CoarseType coarse_type) {
  auto t = detail::trim(raw);
  if (t.empty()) throw Error(ErrorCode::EmptyIdentifier, "identifier is empty");
  if (is_well_formed_id(t)) return std::string(t);
  if (is_mesh_uid(t)) return "MESH:" + std::string(t);
  if (all_digits(t)) {
    if (coarse_type == CoarseType::Gene) return "GENE:" + std::string(t);
    if (coarse_type == CoarseType::Organism) return "TAX:" + std::string(t);
  }
  std::string slug;
  bool pending_dash = false;
  for (char c : t) {
    if (detail::is_space(c)) {
      pending_dash = true;
      continue;
    }
    const auto uc = static_cast<unsigned char>(c);
    if (uc < 0x80 && !detail::is_ascii_alnum(c)) continue;  // ASCII punctuation
    if (pending_dash && !slug.empty()) slug.push_back('-');
    pending_dash = false;
    slug.push_back(detail::to_lower(c));
  }
  if (slug.empty()) throw Error(ErrorCode::EmptyIdentifier, "identifier has no usable characters", std::string(raw));
  return "LOCAL:" + slug;
}

IngestSummary ingest_bundle(KnowledgeBase& kb, const DocumentBundle& bundle) {
  if (const auto* existing = kb.corpus.paper(bundle.paper_id)) {
    if (existing->content_hash == bundle.content_hash) return {};
    throw Error(ErrorCode::DuplicatePaper, "paper already ingested with different content", bundle.paper_id);
  }
  if (bundle.paper_id.empty() || bundle.paper_id == kCuratedSource) {
    throw Error(ErrorCode::SchemaError, "invalid paper_id", "$.paper_id");
  }

  // Validate everything that could make the mutation below fail.
  const std::size_t n = bundle.sentences.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (bundle.sentences[i].idx != i) {
      throw Error(ErrorCode::NonDenseSentenceIndex, "sentence indices must be 0..n-1", bundle.paper_id);
    }
  }
  std::set<std::string> bundle_entities;
  for (const auto& m : bundle.mentions) {
    if (!is_well_formed_id(m.entity.id)) throw Error(ErrorCode::MalformedId, "malformed entity id", m.entity.id);
    if (detail::trim(m.entity.name).empty()) throw Error(ErrorCode::SchemaError, "entity name is empty", m.entity.id);
    if (m.sentence_idx >= n || m.char_span.start >= m.char_span.end ||
        m.char_span.end > bundle.sentences[m.sentence_idx].text.size()) {
      throw Error(ErrorCode::SpanOutOfRange, "mention span out of range", m.entity.id);
    }
    bundle_entities.insert(m.entity.id);
  }
  auto known = [&](const std::string& id) {
    return bundle_entities.count(id) > 0 || kb.graph.contains_entity(id);
  };
  const auto& registry = kb.graph.registry();
  for (const auto& r : bundle.relations) {
    for (const auto* id : {&r.src, &r.dst}) {
      if (!known(*id)) throw Error(ErrorCode::UnknownEntity, "relation endpoint not found", *id);
    }
    if (!registry.accepts(r.category == Category::Event, r.subtype)) {
      throw Error(ErrorCode::UnknownSubtype, "subtype not in registry", r.subtype);
    }
    if (r.sentence_idx >= n) throw Error(ErrorCode::SpanOutOfRange, "relation sentence_idx out of range", bundle.paper_id);
  }
  for (const auto& e : bundle.events) {
    if (!registry.events.contains(e.event_type)) {
      throw Error(ErrorCode::UnknownSubtype, "event type not in registry", e.event_type);
    }
    if (e.roles.empty()) throw Error(ErrorCode::SchemaError, "event has no roles", e.event_type);
    for (const auto& [role, id] : e.roles) {
      if (!known(id)) throw Error(ErrorCode::UnknownEntity, "event role entity not found", id);
    }
    if (e.sentence_idx >= n) throw Error(ErrorCode::SpanOutOfRange, "event sentence_idx out of range", bundle.paper_id);
  }

  IngestSummary summary;
  for (const auto& id : bundle_entities) {
    if (!kb.graph.contains_entity(id)) ++summary.entities_new;
  }
  for (const auto& m : bundle.mentions) kb.graph.upsert_entity(m.entity, bundle.paper_id);

  for (const auto& r : bundle.relations) {
    AssertionEdge edge{r.src, r.dst, r.category, r.subtype, r.action,
                       {ProvenanceRef{bundle.paper_id, r.sentence_idx, r.char_span}}};
    const bool existed = kb.graph.find_edge(edge.key()) != nullptr;
    kb.graph.add_assertion(edge);
    ++(existed ? summary.edges_merged : summary.edges_new);
  }
  for (const auto& e : bundle.events) {
    EventAssertion ev{e.event_type, e.trigger, e.roles, {ProvenanceRef{bundle.paper_id, e.sentence_idx, e.char_span}}};
    if (kb.graph.events().count(ev.key()) == 0) ++summary.events_new;
    kb.graph.add_event(ev);
  }

  std::vector<std::vector<MentionRecord>> per_sentence(n);
  for (const auto& m : bundle.mentions) {
    per_sentence[m.sentence_idx].push_back(
        MentionRecord{m.char_span, m.entity.id, m.entity.coarse_type, m.entity.fine_types});
  }
  std::vector<SentenceRecord> sentences;
  sentences.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = bundle.sentences[i];
    sentences.push_back(SentenceRecord{bundle.paper_id, s.idx, s.section, s.text,
                                       resolve_overlaps(std::move(per_sentence[i]))});
  }
  summary.sentences = n;
  kb.corpus.add_paper(PaperRecord{bundle.paper_id, bundle.title, bundle.authors, bundle.affiliations,
                                  bundle.acknowledgements, bundle.pub_date, bundle.peer_reviewed,
                                  bundle.content_hash},
                      std::move(sentences));
  return summary;
}

std::vector<CtdRow> parse_ctd_table(std::istream& in) {
  std::vector<CtdRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;

    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      auto tab = line.find('\t', pos);
      fields.emplace_back(detail::trim(std::string_view(line).substr(pos, tab - pos)));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    const std::string where = std::to_string(line_no);
    if (fields.size() != 5) throw Error(ErrorCode::MalformedRow, "expected 5 tab-separated columns", where);
    auto category = parse_category(fields[2]);
    auto action = parse_action(fields[4]);
    if (!is_well_formed_id(fields[0]) || !is_well_formed_id(fields[1]) || !category || !action ||
        fields[3].empty()) {
      throw Error(ErrorCode::MalformedRow, "invalid CTD row", where);
    }
    rows.push_back(CtdRow{fields[0], fields[1], *category, fields[3], *action,
                          std::string(kCuratedSource), line_no});
  }
  return rows;
}

std::vector<CtdRow> load_ctd_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open CTD table", path.string());
  return parse_ctd_table(in);
}

CtdLinkSummary link_ctd(KnowledgeGraph& graph, std::span<const CtdRow> rows) {
  for (const auto& row : rows) {
    if (!graph.registry().accepts(row.category == Category::Event, row.subtype)) {
      throw Error(ErrorCode::MalformedRow, "subtype not in registry: " + row.subtype, std::to_string(row.line));
    }
  }
  CtdLinkSummary summary;
  for (const auto& row : rows) {
    if (!graph.contains_entity(row.subject_id) || !graph.contains_entity(row.object_id)) {
      ++summary.skipped;
      continue;
    }
    graph.add_assertion(AssertionEdge{row.subject_id, row.object_id, row.category, row.subtype, row.action,
                                      {ProvenanceRef{std::string(kCuratedSource), 0, std::nullopt}}});
    ++summary.added;
  }
  return summary;
}

CtdLinkSummary relink_ctd(KnowledgeGraph& graph, std::span<const CtdRow> rows) {
  graph.remove_paper(kCuratedSource);
  return link_ctd(graph, rows);
}

UpdateManifest parse_update_manifest(std::string_view text) {
  json root = json::parse(text.begin(), text.end(), nullptr, false);
  if (root.is_discarded() || !root.is_object()) schema_error("manifest must be a JSON object", "$");
  UpdateManifest m;
  for (const auto& [key, value] : root.items()) {
    if (key != "added" && key != "removed" && key != "updated") schema_error("unknown field", "$." + key);
    if (!value.is_array()) schema_error("expected an array of strings", "$." + key);
    for (const auto& item : value) {
      if (!item.is_string()) schema_error("expected an array of strings", "$." + key);
      const auto s = item.get<std::string>();
      if (key == "added") {
        m.added.emplace_back(s);
      } else if (key == "updated") {
        m.updated.emplace_back(s);
      } else {
        m.removed.push_back(s);
      }
    }
  }
  return m;
}

UpdateManifest load_update_manifest(const std::filesystem::path& path) {
  return parse_update_manifest(read_file(path));
}

ResolvedBundle resolve_bundle(std::string source, std::string raw) {
  ResolvedBundle rb{std::move(source), std::move(raw), std::nullopt, std::nullopt};
  try {
    rb.bundle = parse_document_bundle(rb.raw);
  } catch (const Error& e) {
    rb.parse_error = e;
  }
  return rb;
}

ResolvedUpdate resolve_manifest(const UpdateManifest& manifest, const std::filesystem::path& base_dir) {
  auto load = [&](const std::vector<std::filesystem::path>& paths) {
    std::vector<std::future<ResolvedBundle>> pending;
    for (const auto& p : paths) {
      auto full = p.is_absolute() ? p : base_dir / p;
      pending.push_back(std::async(std::launch::async, [full] {
        try {
          return resolve_bundle(full.string(), read_file(full));
        } catch (const Error& e) {
          return ResolvedBundle{full.string(), {}, std::nullopt, e};
        }
      }));
    }
    std::vector<ResolvedBundle> out;
    for (auto& f : pending) out.push_back(f.get());
    return out;
  };
  ResolvedUpdate update;
  update.added = load(manifest.added);
  update.updated = load(manifest.updated);
  update.removed = manifest.removed;
  return update;
}

UpdateSummary apply_update(KnowledgeBase& kb, const ResolvedUpdate& update) {
  std::map<std::string, int> lists_of;
  auto note = [&](const std::string& id, int list) { lists_of[id] |= list; };
  for (const auto& id : update.removed) note(id, 1);
  for (const auto& rb : update.updated) {
    if (rb.bundle) note(rb.bundle->paper_id, 2);
  }
  for (const auto& rb : update.added) {
    if (rb.bundle) note(rb.bundle->paper_id, 4);
  }
  for (const auto& [id, mask] : lists_of) {
    if (mask != 1 && mask != 2 && mask != 4) {
      throw Error(ErrorCode::OverlappingLists, "paper appears in more than one manifest list", id);
    }
  }

  UpdateSummary summary;
  auto record_failure = [&](const ResolvedBundle& rb, const Error& e) {
    summary.errors.push_back(PaperError{rb.bundle ? rb.bundle->paper_id : rb.source, e.code(), e.what()});
  };

  for (const auto& id : update.removed) {
    kb.remove_paper(id);
    summary.removed.push_back(id);
  }
  for (const auto& rb : update.updated) {
    if (rb.parse_error) {
      record_failure(rb, *rb.parse_error);
      continue;
    }
    KnowledgeBase work = kb;
    work.remove_paper(rb.bundle->paper_id);
    try {
      ingest_bundle(work, *rb.bundle);
    } catch (const Error& e) {
      record_failure(rb, e);
      continue;
    }
    kb = std::move(work);
    summary.updated.push_back(rb.bundle->paper_id);
  }
  for (const auto& rb : update.added) {
    if (rb.parse_error) {
      record_failure(rb, *rb.parse_error);
      continue;
    }
    try {
      ingest_bundle(kb, *rb.bundle);
    } catch (const Error& e) {
      record_failure(rb, e);
      continue;
    }
    summary.added.push_back(rb.bundle->paper_id);
  }
  return summary;
}

}  // namespace litkg
