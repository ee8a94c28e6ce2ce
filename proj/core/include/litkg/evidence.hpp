// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "litkg/corpus.hpp"
#include "litkg/embedding.hpp"

namespace litkg {

inline constexpr double kPrevWeight = 0.25;
inline constexpr double kCurWeight = 0.5;
inline constexpr double kNextWeight = 0.25;

/// normalize(0.25 e(prev) + 0.5 e(cur) + 0.25 e(next)); weights of missing
/// neighbours are dropped and the rest renormalized. Errors: UnknownSentence.
EmbeddingVector embed_context(const EmbeddingProvider& provider, const Corpus& corpus, std::string_view paper_id,
                              std::uint32_t sentence_idx);

/// Context vectors keyed by (provider, paper, content hash, sentence).
/// Thread-safe.
class ContextVectorCache {
 public:
  EmbeddingVector get(const EmbeddingProvider& provider, const Corpus& corpus, const SentenceRef& ref);
  // Fills the cache for every sentence, splitting work across `threads`.
  void warm(const EmbeddingProvider& provider, const Corpus& corpus, unsigned threads = 0);
  std::size_t size() const;
  void clear();

 private:
  using Key = std::tuple<std::string, std::string, std::string, std::uint32_t>;
  mutable std::mutex mutex_;
  std::map<Key, EmbeddingVector> vectors_;
};

struct EvidenceHit {
  SentenceRecord sentence;
  double similarity = 0.0;
};

/// Candidates (default: every sentence) ranked by cosine between their
/// context vector and e(query), descending; ties by (paper_id, idx).
/// Errors: EmptyQuery, InvalidArgument (top_n = 0), UnknownSentence.
std::vector<EvidenceHit> rank_evidence(const EmbeddingProvider& provider, const Corpus& corpus, std::string_view query,
                                       const std::optional<std::vector<SentenceRef>>& candidates, std::size_t top_n,
                                       ContextVectorCache* cache = nullptr);

}  // namespace litkg
