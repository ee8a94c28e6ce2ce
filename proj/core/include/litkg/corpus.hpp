// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "litkg/types.hpp"

namespace litkg {

struct MentionRecord {
  CharSpan char_span;
  std::string entity_id;
  CoarseType coarse_type = CoarseType::Gene;
  std::set<std::string> fine_types;

  bool operator==(const MentionRecord&) const = default;
};

struct SentenceRecord {
  std::string paper_id;
  std::uint32_t sentence_idx = 0;
  Section section = Section::Body;
  std::string text;
  std::vector<MentionRecord> mentions;  // disjoint, ordered by start

  bool operator==(const SentenceRecord&) const = default;
};

struct SentenceRef {
  std::string paper_id;
  std::uint32_t sentence_idx = 0;

  auto operator<=>(const SentenceRef&) const = default;
  bool operator==(const SentenceRef&) const = default;
};

struct PaperRecord {
  std::string paper_id;
  std::string title;
  std::vector<std::string> authors;
  std::vector<std::string> affiliations;
  std::string acknowledgements;
  std::string pub_date;
  bool peer_reviewed = false;
  std::string content_hash;  // SHA-256 of the raw bundle bytes

  bool operator==(const PaperRecord&) const = default;
};

/// Sentence store keyed by (paper_id, sentence_idx), with paper metadata.
class Corpus {
 public:
  // Throws DuplicatePaper if the paper is already present.
  void add_paper(PaperRecord paper, std::vector<SentenceRecord> sentences);
  bool remove_paper(std::string_view paper_id);

  const PaperRecord* paper(std::string_view paper_id) const;
  const SentenceRecord* sentence(std::string_view paper_id, std::uint32_t idx) const;
  const SentenceRecord* sentence(const SentenceRef& ref) const {
    return sentence(ref.paper_id, ref.sentence_idx);
  }
  std::span<const SentenceRecord> sentences_of(std::string_view paper_id) const;

  std::size_t paper_count() const noexcept { return papers_.size(); }
  std::size_t sentence_count() const noexcept;

  // Every sentence, ordered by (paper_id, sentence_idx).
  std::vector<SentenceRef> all_sentences() const;
  void for_each_sentence(const std::function<void(const SentenceRecord&)>& fn) const;
  std::vector<const PaperRecord*> papers() const;

  // Papers with at least one mention of the entity, ordered by paper_id.
  std::vector<std::string> papers_mentioning(std::string_view entity_id) const;

  // One JSON object per line; papers then their sentences, in key order.
  std::string canonical_dump() const;

 private:
  struct Entry {
    PaperRecord paper;
    std::vector<SentenceRecord> sentences;
  };
  std::map<std::string, Entry, std::less<>> papers_;
};

}  // namespace litkg
