// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "litkg/meta_query.hpp"

#include <algorithm>
#include <limits>

#include "litkg/error.hpp"
#include "text_util.hpp"

namespace litkg {

namespace {

bool is_placeholder_shape(std::string_view s) {
  if (s.empty() || !detail::is_ascii_upper(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return detail::is_ascii_upper(c) || c == '_'; });
}

// Bounds of s after trimming leading and trailing characters outside [A-Za-z0-9_].
std::pair<std::size_t, std::size_t> core_bounds(std::string_view s) {
  auto keep = [](char c) { return detail::is_ascii_alnum(c) || c == '_' || static_cast<unsigned char>(c) >= 0x80; };
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && !keep(s[b])) ++b;
  while (e > b && !keep(s[e - 1])) --e;
  return {b, e};
}

struct Item {
  std::uint32_t start;
  std::uint32_t end;
};

class Assigner {
 public:
  Assigner(const SentenceRecord& s, const MetaQuery& mq, const std::vector<TextToken>& words)
      : sentence_(s), mq_(mq), words_(words), used_(s.mentions.size(), false) {}

  std::optional<std::uint32_t> best() {
    search(0);
    return best_;
  }

 private:
  void search(std::size_t t) {
    if (t == mq_.tokens.size()) {
      if (items_.empty()) return;
      std::uint32_t lo = std::numeric_limits<std::uint32_t>::max();
      std::uint32_t hi = 0;
      for (const auto& it : items_) {
        lo = std::min(lo, it.start);
        hi = std::max(hi, it.end);
      }
      if (!best_ || hi - lo < *best_) best_ = hi - lo;
      return;
    }
    const auto& tok = mq_.tokens[t];
    if (tok.kind == MetaToken::Kind::Placeholder) {
      for (std::size_t i = 0; i < sentence_.mentions.size(); ++i) {
        const auto& m = sentence_.mentions[i];
        if (used_[i] || !tok.type.satisfied_by(m)) continue;
        used_[i] = true;
        items_.push_back({m.char_span.start, m.char_span.end});
        search(t + 1);
        items_.pop_back();
        used_[i] = false;
      }
    } else {
      for (const auto& w : words_) {
        if (w.text != tok.text) continue;
        items_.push_back({w.span.start, w.span.end});
        search(t + 1);
        items_.pop_back();
      }
    }
  }

  const SentenceRecord& sentence_;
  const MetaQuery& mq_;
  const std::vector<TextToken>& words_;
  std::vector<bool> used_;
  std::vector<Item> items_;
  std::optional<std::uint32_t> best_;
};

}  // namespace

bool TypeConstraint::satisfied_by(const MentionRecord& m) const {
  if (coarse) return m.coarse_type == *coarse;
  return m.fine_types.count(fine_type) > 0;
}

TypeVocabulary::TypeVocabulary(const Vocabulary& fine_types) {
  for (const auto& f : fine_types.entries()) entries_[detail::upper(f)] = TypeConstraint{std::nullopt, f};
  entries_["CHEMICAL"] = TypeConstraint{CoarseType::Chemical, {}};
  entries_["GENE"] = TypeConstraint{CoarseType::Gene, {}};
  entries_["PROTEIN"] = TypeConstraint{CoarseType::Gene, {}};
  entries_["DISEASE"] = TypeConstraint{CoarseType::Disease, {}};
  entries_["ORGANISM"] = TypeConstraint{CoarseType::Organism, {}};
}

const TypeVocabulary& TypeVocabulary::builtin() {
  static const TypeVocabulary vocabulary(Vocabulary::parse(builtin_fine_types_text()));
  return vocabulary;
}

std::optional<TypeConstraint> TypeVocabulary::lookup(std::string_view upper) const {
  auto it = entries_.find(upper);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

MetaQuery parse_meta_query(std::string_view text, const TypeVocabulary& vocabulary) {
  MetaQuery mq;
  for (const auto& raw : detail::split_whitespace(text)) {
    const auto [b, e] = core_bounds(raw);
    const std::string_view tok = std::string_view(raw).substr(b, e - b);
    if (tok.empty()) continue;
    if (is_placeholder_shape(tok)) {
      if (auto type = vocabulary.lookup(tok)) {
        mq.tokens.push_back({MetaToken::Kind::Placeholder, std::string(tok), *type});
        continue;
      }
      if (tok.size() >= 4) throw Error(ErrorCode::UnknownPlaceholder, "unknown placeholder", std::string(tok));
    }
    mq.tokens.push_back({MetaToken::Kind::Literal, detail::lower(tok), {}});
  }
  if (mq.tokens.empty()) throw Error(ErrorCode::EmptyQuery, "query has no tokens");
  return mq;
}

std::vector<TextToken> tokenize_sentence(std::string_view text) {
  std::vector<TextToken> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && detail::is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !detail::is_space(text[i])) ++i;
    if (start == i) break;
    const auto [b, e] = core_bounds(text.substr(start, i - start));
    if (b == e) continue;
    out.push_back({detail::lower(text.substr(start + b, e - b)),
                   CharSpan{static_cast<std::uint32_t>(start + b), static_cast<std::uint32_t>(start + e)}});
  }
  return out;
}

std::optional<std::uint32_t> meta_match_span(const SentenceRecord& sentence, const MetaQuery& mq) {
  const auto words = tokenize_sentence(sentence.text);
  return Assigner(sentence, mq, words).best();
}

std::vector<MetaMatch> match_meta_query(const Corpus& corpus, const MetaQuery& mq, std::size_t top_n) {
  std::vector<MetaMatch> out;
  corpus.for_each_sentence([&](const SentenceRecord& s) {
    if (auto span = meta_match_span(s, mq)) out.push_back({s, mq.tokens.size(), *span});
  });
  std::sort(out.begin(), out.end(), [](const MetaMatch& a, const MetaMatch& b) {
    if (a.matched_tokens != b.matched_tokens) return a.matched_tokens > b.matched_tokens;
    if (a.span != b.span) return a.span < b.span;
    return std::tie(a.sentence.paper_id, a.sentence.sentence_idx) < std::tie(b.sentence.paper_id, b.sentence.sentence_idx);
  });
  if (out.size() > top_n) out.resize(top_n);
  return out;
}

}  // namespace litkg
