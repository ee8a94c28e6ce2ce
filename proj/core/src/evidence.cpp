// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "litkg/evidence.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <thread>

#include "litkg/error.hpp"
#include "text_util.hpp"

namespace litkg {

EmbeddingVector embed_context(const EmbeddingProvider& provider, const Corpus& corpus, std::string_view paper_id,
                              std::uint32_t sentence_idx) {
  const auto sentences = corpus.sentences_of(paper_id);
  if (sentence_idx >= sentences.size()) {
    throw Error(ErrorCode::UnknownSentence, "sentence not found",
                std::string(paper_id) + ":" + std::to_string(sentence_idx));
  }
  const auto cur = provider.embed(sentences[sentence_idx].text);
  EmbeddingVector sum(cur.size(), 0.0);
  double total = 0.0;
  auto add = [&](const EmbeddingVector& v, double w) {
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += w * v[i];
    total += w;
  };
  if (sentence_idx > 0) add(provider.embed(sentences[sentence_idx - 1].text), kPrevWeight);
  add(cur, kCurWeight);
  if (sentence_idx + 1 < sentences.size()) add(provider.embed(sentences[sentence_idx + 1].text), kNextWeight);
  for (auto& x : sum) x /= total;
  // Opposing neighbours can cancel; the sentence itself is the fallback.
  if (l2_norm(sum) == 0.0) return cur;
  return normalized(std::move(sum));
}

EmbeddingVector ContextVectorCache::get(const EmbeddingProvider& provider, const Corpus& corpus,
                                        const SentenceRef& ref) {
  const auto* paper = corpus.paper(ref.paper_id);
  Key key{provider.name(), ref.paper_id, paper ? paper->content_hash : std::string(), ref.sentence_idx};
  {
    std::lock_guard lock(mutex_);
    if (auto it = vectors_.find(key); it != vectors_.end()) return it->second;
  }
  auto v = embed_context(provider, corpus, ref.paper_id, ref.sentence_idx);
  std::lock_guard lock(mutex_);
  return vectors_.emplace(std::move(key), std::move(v)).first->second;
}

void ContextVectorCache::warm(const EmbeddingProvider& provider, const Corpus& corpus, unsigned threads) {
  const auto refs = corpus.all_sentences();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t chunk = (refs.size() + threads - 1) / std::max<std::size_t>(threads, 1);
  std::vector<std::future<void>> jobs;
  for (std::size_t start = 0; start < refs.size(); start += chunk) {
    const std::size_t end = std::min(refs.size(), start + chunk);
    jobs.push_back(std::async(std::launch::async, [&, start, end] {
      for (std::size_t i = start; i < end; ++i) get(provider, corpus, refs[i]);
    }));
  }
  for (auto& j : jobs) j.get();
}

std::size_t ContextVectorCache::size() const {
  std::lock_guard lock(mutex_);
  return vectors_.size();
}

void ContextVectorCache::clear() {
  std::lock_guard lock(mutex_);
  vectors_.clear();
}

std::vector<EvidenceHit> rank_evidence(const EmbeddingProvider& provider, const Corpus& corpus, std::string_view query,
                                       const std::optional<std::vector<SentenceRef>>& candidates, std::size_t top_n,
                                       ContextVectorCache* cache) {
  if (detail::trim(query).empty()) throw Error(ErrorCode::EmptyQuery, "query is empty");
  if (top_n == 0) throw Error(ErrorCode::InvalidArgument, "top_n must be positive");

  std::vector<SentenceRef> refs;
  if (candidates) {
    std::set<SentenceRef> unique(candidates->begin(), candidates->end());
    for (const auto& ref : unique) {
      if (corpus.sentence(ref) == nullptr) {
        throw Error(ErrorCode::UnknownSentence, "sentence not found",
                    ref.paper_id + ":" + std::to_string(ref.sentence_idx));
      }
    }
    refs.assign(unique.begin(), unique.end());
  } else {
    refs = corpus.all_sentences();
  }

  const auto q = provider.embed(query);
  std::vector<std::pair<double, const SentenceRef*>> scored;
  scored.reserve(refs.size());
  for (const auto& ref : refs) {
    const auto v = cache ? cache->get(provider, corpus, ref)
                         : embed_context(provider, corpus, ref.paper_id, ref.sentence_idx);
    scored.emplace_back(cosine(v, q), &ref);
  }
  const std::size_t n = std::min(top_n, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(n), scored.end(),
                    [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return *a.second < *b.second;
                    });
  std::vector<EvidenceHit> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back({*corpus.sentence(*scored[i].second), scored[i].first});
  return out;
}

}  // namespace litkg
