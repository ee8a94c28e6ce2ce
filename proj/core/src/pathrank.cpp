// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "litkg/pathrank.hpp"

#include <algorithm>

#include "litkg/error.hpp"

namespace litkg {

std::string to_string(ScoringMode mode) {
  switch (mode) {
    case ScoringMode::SumSupport: return "sum";
    case ScoringMode::AvgSupport: return "avg";
    case ScoringMode::MinSupport: return "min";
  }
  return "avg";
}

std::optional<ScoringMode> parse_scoring_mode(std::string_view s) {
  if (s == "sum" || s == "SumSupport") return ScoringMode::SumSupport;
  if (s == "avg" || s == "AvgSupport") return ScoringMode::AvgSupport;
  if (s == "min" || s == "MinSupport") return ScoringMode::MinSupport;
  return std::nullopt;
}

namespace {

void validate(const KnowledgeGraph& graph, const PathQuery& q) {
  if (q.src == q.dst) throw Error(ErrorCode::InvalidArgument, "src and dst must differ", q.src);
  if (q.max_hops < 1 || q.max_hops > 4) {
    throw Error(ErrorCode::InvalidArgument, "max_hops must be in [1, 4]", std::to_string(q.max_hops));
  }
  if (q.top_k == 0) throw Error(ErrorCode::InvalidArgument, "top_k must be positive");
  for (const auto* id : {&q.src, &q.dst}) {
    if (!graph.contains_entity(*id)) throw Error(ErrorCode::UnknownEntity, "entity not found", *id);
  }
}

class Walker {
 public:
  Walker(const KnowledgeGraph& graph, const PathQuery& q) : graph_(graph), q_(q) {}

  PathEnumeration run() {
    nodes_.push_back(q_.src);
    visit(q_.src);
    return std::move(out_);
  }

 private:
  bool admits(const EdgeKey& key) const {
    if (key.src == key.dst) return false;
    if (q_.categories && q_.categories->count(key.category) == 0) return false;
    return graph_.support(key) >= q_.min_edge_support;
  }

  void visit(const std::string& node) {
    for (const auto& key : graph_.incident(node)) {
      if (out_.truncated) return;
      if (!admits(key)) continue;
      if (q_.directed && key.src != node) continue;
      const std::string& next = key.src == node ? key.dst : key.src;
      if (std::find(nodes_.begin(), nodes_.end(), next) != nodes_.end()) continue;
      nodes_.push_back(next);
      edges_.push_back(key);
      if (next == q_.dst) {
        if (out_.paths.size() >= q_.budget) {
          out_.truncated = true;
        } else {
          out_.paths.push_back(Path{nodes_, edges_, {}});
        }
      } else if (edges_.size() < static_cast<std::size_t>(q_.max_hops)) {
        visit(next);
      }
      nodes_.pop_back();
      edges_.pop_back();
    }
  }

  const KnowledgeGraph& graph_;
  const PathQuery& q_;
  std::vector<std::string> nodes_;
  std::vector<EdgeKey> edges_;
  PathEnumeration out_;
};

}  // namespace

PathEnumeration enumerate_paths(const KnowledgeGraph& graph, const PathQuery& q) {
  validate(graph, q);
  return Walker(graph, q).run();
}

Rational score_path(const KnowledgeGraph& graph, const Path& path, ScoringMode mode) {
  if (path.edges.empty()) throw Error(ErrorCode::InvalidArgument, "path has no edges");
  std::int64_t sum = 0;
  std::int64_t min = INT64_MAX;
  for (const auto& key : path.edges) {
    const auto* prov = graph.find_edge(key);
    if (prov == nullptr) throw Error(ErrorCode::UnknownEdge, "edge not found", key.to_string());
    const auto s = static_cast<std::int64_t>(graph.support(key));
    sum += s;
    min = std::min(min, s);
  }
  switch (mode) {
    case ScoringMode::SumSupport: return Rational(sum);
    case ScoringMode::MinSupport: return Rational(min);
    case ScoringMode::AvgSupport: break;
  }
  return Rational(sum, static_cast<std::int64_t>(path.edges.size()));
}

bool ranks_before(const Path& a, const Path& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.nodes != b.nodes) return a.nodes < b.nodes;
  return a.edges < b.edges;
}

std::vector<Path> rank_paths(std::vector<Path> paths, std::size_t top_k) {
  std::sort(paths.begin(), paths.end(), ranks_before);
  if (paths.size() > top_k) paths.resize(top_k);
  return paths;
}

ScoredSubgraph connection_subgraph(const KnowledgeGraph& graph, const PathQuery& q) {
  auto found = enumerate_paths(graph, q);
  if (found.paths.empty()) {
    throw Error(ErrorCode::NoPathFound, "no path within " + std::to_string(q.max_hops) + " hops",
                q.src + " -> " + q.dst);
  }
  for (auto& p : found.paths) p.score = score_path(graph, p, q.mode);

  ScoredSubgraph sg;
  sg.truncated = found.truncated;
  sg.paths = rank_paths(std::move(found.paths), q.top_k);
  for (const auto& p : sg.paths) {
    sg.nodes.insert(p.nodes.begin(), p.nodes.end());
    for (const auto& key : p.edges) {
      sg.edge_salience[key] += p.score;
      auto& ev = sg.evidence[key];
      if (ev.empty()) {
        const auto* prov = graph.find_edge(key);
        for (auto it = prov->begin(); it != prov->end() && ev.size() < kEvidencePerEdge; ++it) ev.push_back(*it);
      }
    }
  }
  return sg;
}

}  // namespace litkg
