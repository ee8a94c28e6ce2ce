// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>

namespace litkg::oracle {

namespace {

using Edges = std::vector<testing::RandomGraph::Edge>;

void walk(const Edges& edges, const std::string& dst, int max_hops, bool directed, std::vector<std::string>& nodes,
          std::vector<EdgeKey>& keys, std::set<PathShape>& out) {
  const std::string cur = nodes.back();
  if (cur == dst) {
    out.insert({nodes, keys});
    return;
  }
  if (static_cast<int>(keys.size()) == max_hops) return;
  for (const auto& e : edges) {
    const auto& k = e.key;
    if (k.src == k.dst) continue;
    std::string next;
    if (k.src == cur) {
      next = k.dst;
    } else if (!directed && k.dst == cur) {
      next = k.src;
    } else {
      continue;
    }
    if (std::find(nodes.begin(), nodes.end(), next) != nodes.end()) continue;
    nodes.push_back(next);
    keys.push_back(k);
    walk(edges, dst, max_hops, directed, nodes, keys, out);
    nodes.pop_back();
    keys.pop_back();
  }
}

std::tuple<std::string, std::string, std::string, std::string, std::string> key_tuple(const EdgeKey& k) {
  return {k.src, k.dst, std::string(to_string(k.category)), k.subtype, std::string(to_string(k.action))};
}

bool ascii_alnum(unsigned char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool word_char(unsigned char c) { return ascii_alnum(c) || c == '_'; }

bool blank(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::string lower_ascii(std::string s) {
  for (auto& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

std::vector<double> unit(std::vector<double> v) {
  double sq = 0;
  for (double x : v) sq += x * x;
  if (sq == 0) {
    std::fill(v.begin(), v.end(), 0.0);
    v[0] = 1.0;
    return v;
  }
  const double n = std::sqrt(sq);
  for (auto& x : v) x /= n;
  return v;
}

struct Word {
  std::string text;
  std::uint32_t start, end;
};

std::vector<Word> words_of(const std::string& text) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && blank(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !blank(static_cast<unsigned char>(text[j]))) ++j;
    std::size_t b = i, e = j;
    while (b < e && !word_char(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && !word_char(static_cast<unsigned char>(text[e - 1]))) --e;
    if (b < e) {
      out.push_back({lower_ascii(text.substr(b, e - b)), static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(e)});
    }
    i = j;
  }
  return out;
}

}  // namespace

std::set<PathShape> brute_force_paths(const Edges& edges, const std::string& src, const std::string& dst,
                                      int max_hops, bool directed) {
  std::set<PathShape> out;
  std::vector<std::string> nodes{src};
  std::vector<EdgeKey> keys;
  walk(edges, dst, max_hops, directed, nodes, keys, out);
  return out;
}

std::pair<std::int64_t, std::int64_t> score_fraction(const std::vector<std::size_t>& supports, ScoringMode mode) {
  const auto sum = static_cast<std::int64_t>(std::accumulate(supports.begin(), supports.end(), std::size_t{0}));
  switch (mode) {
    case ScoringMode::SumSupport:
      return {sum, 1};
    case ScoringMode::AvgSupport:
      return {sum, static_cast<std::int64_t>(supports.size())};
    case ScoringMode::MinSupport:
      return {static_cast<std::int64_t>(*std::min_element(supports.begin(), supports.end())), 1};
  }
  return {0, 1};
}

__extension__ typedef __int128 i128;

bool rank_less(const Path& a, const Path& b) {
  // a.score > b.score, by cross-multiplication of positive denominators.
  const i128 lhs = static_cast<i128>(a.score.num()) * b.score.den();
  const i128 rhs = static_cast<i128>(b.score.num()) * a.score.den();
  if (lhs != rhs) return lhs > rhs;
  if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
  if (a.nodes != b.nodes) return a.nodes < b.nodes;
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    const auto ka = key_tuple(a.edges[i]);
    const auto kb = key_tuple(b.edges[i]);
    if (ka != kb) return ka < kb;
  }
  return false;
}

std::vector<Path> rank_sort(std::vector<Path> paths, std::size_t top_k) {
  std::stable_sort(paths.begin(), paths.end(), rank_less);
  if (paths.size() > top_k) paths.resize(top_k);
  return paths;
}

std::vector<double> hashing_embed(const std::string& text, std::size_t dim) {
  std::vector<double> v(dim, 0.0);
  std::size_t i = 0;
  while (i < text.size()) {
    if (!ascii_alnum(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && ascii_alnum(static_cast<unsigned char>(text[j]))) ++j;
    const std::string token = lower_ascii(text.substr(i, j - i));
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : token) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    v[h % dim] += ((h >> 32) & 1U) ? -1.0 : 1.0;
    i = j;
  }
  return unit(std::move(v));
}

std::vector<double> context_embed(const Corpus& corpus, const SentenceRef& ref, std::size_t dim) {
  const auto sentences = corpus.sentences_of(ref.paper_id);
  const SentenceRecord* prev = nullptr;
  const SentenceRecord* cur = nullptr;
  const SentenceRecord* next = nullptr;
  for (const auto& s : sentences) {
    if (s.sentence_idx + 1 == ref.sentence_idx) prev = &s;
    if (s.sentence_idx == ref.sentence_idx) cur = &s;
    if (s.sentence_idx == ref.sentence_idx + 1) next = &s;
  }
  if (!cur) throw std::out_of_range("no such sentence");
  std::vector<std::pair<double, const SentenceRecord*>> parts{{0.5, cur}};
  if (prev) parts.push_back({0.25, prev});
  if (next) parts.push_back({0.25, next});
  double total = 0;
  for (const auto& [w, s] : parts) total += w;
  std::vector<double> v(dim, 0.0);
  for (const auto& [w, s] : parts) {
    const auto e = hashing_embed(s->text, dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] += (w / total) * e[i];
  }
  double sq = 0;
  for (double x : v) sq += x * x;
  if (sq == 0) return hashing_embed(cur->text, dim);
  return unit(std::move(v));
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return std::clamp(d / std::sqrt(na * nb), -1.0, 1.0);
}

std::vector<ScoredRef> brute_force_evidence(const Corpus& corpus, const std::string& query, std::size_t dim) {
  const auto q = hashing_embed(query, dim);
  std::vector<ScoredRef> out;
  for (const auto& ref : corpus.all_sentences()) out.push_back({ref, cosine(context_embed(corpus, ref, dim), q)});
  std::sort(out.begin(), out.end(), [](const ScoredRef& a, const ScoredRef& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.ref < b.ref;
  });
  return out;
}

std::optional<std::uint32_t> naive_meta_span(const SentenceRecord& sentence, const MetaQuery& query) {
  const auto words = words_of(sentence.text);
  // Candidates per token: (mention index or -1, start, end).
  struct Candidate {
    int mention;
    std::uint32_t start, end;
  };
  std::vector<std::vector<Candidate>> options;
  for (const auto& tok : query.tokens) {
    std::vector<Candidate> c;
    if (tok.kind == MetaToken::Kind::Placeholder) {
      for (std::size_t i = 0; i < sentence.mentions.size(); ++i) {
        const auto& m = sentence.mentions[i];
        const bool ok = tok.type.coarse ? m.coarse_type == *tok.type.coarse : m.fine_types.count(tok.type.fine_type) > 0;
        if (ok) c.push_back({static_cast<int>(i), m.char_span.start, m.char_span.end});
      }
    } else {
      for (const auto& w : words) {
        if (w.text == tok.text) c.push_back({-1, w.start, w.end});
      }
    }
    if (c.empty()) return std::nullopt;
    options.push_back(std::move(c));
  }

  std::optional<std::uint32_t> best;
  std::vector<std::size_t> choice(options.size(), 0);
  while (true) {
    std::set<int> used;
    bool distinct = true;
    std::uint32_t lo = UINT32_MAX, hi = 0;
    for (std::size_t t = 0; t < options.size(); ++t) {
      const auto& c = options[t][choice[t]];
      if (c.mention >= 0 && !used.insert(c.mention).second) distinct = false;
      lo = std::min(lo, c.start);
      hi = std::max(hi, c.end);
    }
    if (distinct && (!best || hi - lo < *best)) best = hi - lo;
    // Odometer increment over the Cartesian product.
    std::size_t t = 0;
    while (t < options.size() && ++choice[t] == options[t].size()) choice[t++] = 0;
    if (t == options.size()) break;
  }
  return best;
}

std::vector<MetaHit> naive_meta_scan(const Corpus& corpus, const MetaQuery& query) {
  std::vector<MetaHit> out;
  for (const auto& ref : corpus.all_sentences()) {
    if (auto span = naive_meta_span(*corpus.sentence(ref), query)) out.push_back({ref, *span});
  }
  std::sort(out.begin(), out.end(), [](const MetaHit& a, const MetaHit& b) {
    return std::tie(a.span, a.ref) < std::tie(b.span, b.ref);
  });
  return out;
}

double box_gap_sq(const Box& a, const Box& b) {
  const double dx = std::max({0.0, b.x0 - a.x1, a.x0 - b.x1});
  const double dy = std::max({0.0, b.y0 - a.y1, a.y0 - b.y1});
  return dx * dx + dy * dy;
}

std::vector<std::optional<char>> nearest_markers(const std::vector<Marker>& markers, const std::vector<Box>& regions) {
  std::vector<std::optional<char>> out;
  for (const auto& r : regions) {
    std::optional<char> best;
    double best_d = 0;
    for (const auto& m : markers) {
      const double d = box_gap_sq(m.box.box, r);
      if (!best || d < best_d || (d == best_d && m.letter < *best)) {
        best = m.letter;
        best_d = d;
      }
    }
    out.push_back(best);
  }
  return out;
}

std::string squash_whitespace(const std::string& s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (blank(static_cast<unsigned char>(c))) {
      pending = !out.empty();
      continue;
    }
    if (pending) out += ' ';
    pending = false;
    out += c;
  }
  return out;
}

}  // namespace litkg::oracle
