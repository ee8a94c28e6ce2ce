// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "litkg/corpus.hpp"
#include "litkg/registry.hpp"

namespace litkg {

/// A placeholder is satisfied by a mention of its coarse type, or by a
/// mention carrying its fine type.
struct TypeConstraint {
  std::optional<CoarseType> coarse;
  std::string fine_type;

  bool satisfied_by(const MentionRecord& m) const;
  bool operator==(const TypeConstraint&) const = default;
};

/// Placeholder names: the coarse types, PROTEIN (as Gene) and every fine type.
class TypeVocabulary {
 public:
  explicit TypeVocabulary(const Vocabulary& fine_types);
  static const TypeVocabulary& builtin();

  std::optional<TypeConstraint> lookup(std::string_view upper) const;

 private:
  std::map<std::string, TypeConstraint, std::less<>> entries_;
};

struct MetaToken {
  enum class Kind { Literal, Placeholder };
  Kind kind = Kind::Literal;
  std::string text;  // lower-cased literal, or the placeholder name
  TypeConstraint type;

  bool operator==(const MetaToken&) const = default;
};

struct MetaQuery {
  std::vector<MetaToken> tokens;
};

/// Whitespace tokens with surrounding punctuation trimmed. A token matching
/// [A-Z][A-Z_]* is a placeholder if the vocabulary knows it; unknown ones of
/// length >= 4 raise UnknownPlaceholder, shorter ones are literals.
/// Errors: EmptyQuery, UnknownPlaceholder.
MetaQuery parse_meta_query(std::string_view text, const TypeVocabulary& vocabulary = TypeVocabulary::builtin());

struct TextToken {
  std::string text;  // lower-cased
  CharSpan span;
};

/// Whitespace tokens of a sentence, trimmed of surrounding punctuation and
/// lower-cased, with byte spans.
std::vector<TextToken> tokenize_sentence(std::string_view text);

struct MetaMatch {
  SentenceRecord sentence;
  std::size_t matched_tokens = 0;
  std::uint32_t span = 0;  // smallest extent covering one valid assignment
};

/// Sentences where every placeholder takes a distinct mention of its type and
/// every literal occurs as a token. Ordered by matched_tokens desc, span asc,
/// paper_id, sentence_idx.
std::vector<MetaMatch> match_meta_query(const Corpus& corpus, const MetaQuery& mq, std::size_t top_n);

/// Smallest covering extent for one sentence, or nullopt when it does not match.
std::optional<std::uint32_t> meta_match_span(const SentenceRecord& sentence, const MetaQuery& mq);

}  // namespace litkg
