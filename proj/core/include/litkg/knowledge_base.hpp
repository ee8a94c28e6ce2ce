// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>

#include "litkg/corpus.hpp"
#include "litkg/knowledge_graph.hpp"

namespace litkg {

/// The graph together with the sentences its provenance points into.
struct KnowledgeBase {
  KnowledgeGraph graph;
  Corpus corpus;

  KnowledgeBase() = default;
  explicit KnowledgeBase(std::shared_ptr<const Registry> registry) : graph(std::move(registry)) {}

  // Drops the paper from the graph and its sentences from the corpus.
  RemovalSummary remove_paper(std::string_view paper_id) {
    auto summary = graph.remove_paper(paper_id);
    corpus.remove_paper(paper_id);
    return summary;
  }

  // Graph counts, with `papers` taken from the corpus.
  GraphStats stats() const {
    auto s = graph.stats();
    s.papers = corpus.paper_count();
    return s;
  }
};

using Snapshot = std::shared_ptr<const KnowledgeBase>;

/// Single-writer, many-reader holder of the current knowledge base.
///
/// Readers take an immutable snapshot and may share it across threads.
/// Writers are serialized; each write works on a private copy that is
/// published only if the write function returns normally, so a snapshot
/// is never affected by later mutations.
class Repository {
 public:
  explicit Repository(KnowledgeBase initial = {})
      : current_(std::make_shared<const KnowledgeBase>(std::move(initial))) {}

  Snapshot snapshot() const {
    std::lock_guard lock(publish_mutex_);
    return current_;
  }

  template <typename Fn>
  auto write(Fn&& fn) {
    std::lock_guard writer(writer_mutex_);
    auto next = std::make_shared<KnowledgeBase>(*snapshot());
    if constexpr (std::is_void_v<decltype(fn(*next))>) {
      fn(*next);
      publish(std::move(next));
    } else {
      auto result = fn(*next);
      publish(std::move(next));
      return result;
    }
  }

 private:
  void publish(std::shared_ptr<KnowledgeBase> next) {
    std::lock_guard lock(publish_mutex_);
    current_ = std::move(next);
  }

  mutable std::mutex publish_mutex_;
  std::mutex writer_mutex_;
  Snapshot current_;
};

}  // namespace litkg
