// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "litkg/corpus.hpp"

#include <nlohmann/json.hpp>

#include "litkg/error.hpp"

namespace litkg {

void Corpus::add_paper(PaperRecord paper, std::vector<SentenceRecord> sentences) {
  if (papers_.count(paper.paper_id) > 0) {
    throw Error(ErrorCode::DuplicatePaper, "paper already in corpus", paper.paper_id);
  }
  std::string id = paper.paper_id;
  papers_.emplace(std::move(id), Entry{std::move(paper), std::move(sentences)});
}

bool Corpus::remove_paper(std::string_view paper_id) {
  auto it = papers_.find(paper_id);
  if (it == papers_.end()) return false;
  papers_.erase(it);
  return true;
}

const PaperRecord* Corpus::paper(std::string_view paper_id) const {
  auto it = papers_.find(paper_id);
  return it == papers_.end() ? nullptr : &it->second.paper;
}

const SentenceRecord* Corpus::sentence(std::string_view paper_id, std::uint32_t idx) const {
  auto it = papers_.find(paper_id);
  if (it == papers_.end() || idx >= it->second.sentences.size()) return nullptr;
  return &it->second.sentences[idx];
}

std::span<const SentenceRecord> Corpus::sentences_of(std::string_view paper_id) const {
  auto it = papers_.find(paper_id);
  if (it == papers_.end()) return {};
  return it->second.sentences;
}

std::size_t Corpus::sentence_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [id, entry] : papers_) n += entry.sentences.size();
  return n;
}

std::vector<SentenceRef> Corpus::all_sentences() const {
  std::vector<SentenceRef> out;
  out.reserve(sentence_count());
  for (const auto& [id, entry] : papers_) {
    for (const auto& s : entry.sentences) out.push_back({id, s.sentence_idx});
  }
  return out;
}

void Corpus::for_each_sentence(const std::function<void(const SentenceRecord&)>& fn) const {
  for (const auto& [id, entry] : papers_) {
    for (const auto& s : entry.sentences) fn(s);
  }
}

std::vector<const PaperRecord*> Corpus::papers() const {
  std::vector<const PaperRecord*> out;
  out.reserve(papers_.size());
  for (const auto& [id, entry] : papers_) out.push_back(&entry.paper);
  return out;
}

std::vector<std::string> Corpus::papers_mentioning(std::string_view entity_id) const {
  std::vector<std::string> out;
  for (const auto& [id, entry] : papers_) {
    bool hit = false;
    for (const auto& s : entry.sentences) {
      for (const auto& m : s.mentions) {
        if (m.entity_id == entity_id) {
          hit = true;
          break;
        }
      }
      if (hit) break;
    }
    if (hit) out.push_back(id);
  }
  return out;
}

std::string Corpus::canonical_dump() const {
  using ordered = nlohmann::ordered_json;
  std::string out;
  for (const auto& [id, entry] : papers_) {
    const auto& p = entry.paper;
    ordered paper = {{"kind", "paper"},
                     {"paper_id", p.paper_id},
                     {"title", p.title},
                     {"authors", p.authors},
                     {"affiliations", p.affiliations},
                     {"acknowledgements", p.acknowledgements},
                     {"pub_date", p.pub_date},
                     {"peer_reviewed", p.peer_reviewed},
                     {"content_hash", p.content_hash}};
    out += paper.dump();
    out += '\n';
    for (const auto& s : entry.sentences) {
      ordered mentions = ordered::array();
      for (const auto& m : s.mentions) {
        mentions.push_back({{"char_span", {m.char_span.start, m.char_span.end}},
                            {"entity_id", m.entity_id},
                            {"coarse_type", to_string(m.coarse_type)},
                            {"fine_types", m.fine_types}});
      }
      ordered sentence = {{"kind", "sentence"},
                          {"paper_id", s.paper_id},
                          {"sentence_idx", s.sentence_idx},
                          {"section", to_string(s.section)},
                          {"text", s.text},
                          {"mentions", std::move(mentions)}};
      out += sentence.dump();
      out += '\n';
    }
  }
  return out;
}

}  // namespace litkg
