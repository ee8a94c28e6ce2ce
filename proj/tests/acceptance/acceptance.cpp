// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit when any
// criterion fails. Every check compares library output against an oracle
// from tests/support or against checked-in expected files.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixture.hpp"
#include "litkg/canonical.hpp"
#include "litkg/evidence.hpp"
#include "litkg/facets.hpp"
#include "litkg/figure_layout.hpp"
#include "litkg/ingest.hpp"
#include "litkg/meta_query.hpp"
#include "litkg/pathrank.hpp"
#include "litkg/report.hpp"
#include "litkg/service.hpp"
#include "oracles.hpp"

namespace {

using namespace litkg;
using nlohmann::json;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string note;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

// ---- 1. path enumeration against brute force ------------------------------

Outcome path_oracle() {
  Outcome out;
  std::mt19937_64 rng(20200402);
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t compared = 0, total_paths = 0;
  for (int g = 0; g < 200; ++g) {
    auto rg = testing::make_random_graph(rng, 15, 40);
    const auto& nodes = rg.nodes;
    const std::string src = nodes[rng() % nodes.size()];
    std::string dst = nodes[rng() % nodes.size()];
    if (dst == src) dst = nodes[(std::find(nodes.begin(), nodes.end(), src) - nodes.begin() + 1) % nodes.size()];
    for (int hops : {2, 3, 4}) {
      for (bool directed : {false, true}) {
        PathQuery q;
        q.src = src;
        q.dst = dst;
        q.max_hops = hops;
        q.directed = directed;
        const auto found = enumerate_paths(rg.graph, q);
        std::set<oracle::PathShape> got;
        for (const auto& p : found.paths) got.insert({p.nodes, p.edges});
        const auto want = oracle::brute_force_paths(rg.edges, src, dst, hops, directed);
        out.check(!found.truncated, "graph " + std::to_string(g) + " truncated");
        out.check(got.size() == found.paths.size(), "graph " + std::to_string(g) + " duplicate paths");
        out.check(got == want, "graph " + std::to_string(g) + " hops " + std::to_string(hops) +
                                   (directed ? " directed" : " undirected") + ": " + std::to_string(got.size()) +
                                   " vs oracle " + std::to_string(want.size()));
        ++compared;
        total_paths += want.size();
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.check(secs < 30.0, "runtime " + std::to_string(secs) + " s");
  char buf[160];
  std::snprintf(buf, sizeof buf, "200 graphs, %zu queries, %zu paths, %.2f s", compared, total_paths, secs);
  out.note = buf;
  return out;
}

// ---- 2. ranking against an oracle sort ------------------------------------

std::string serialize(const std::vector<Path>& paths) {
  std::string s;
  for (const auto& p : paths) {
    s += p.score.to_string();
    for (const auto& n : p.nodes) s += "|" + n;
    for (const auto& e : p.edges) s += "|" + e.to_string();
    s += "\n";
  }
  return s;
}

Outcome ranking() {
  Outcome out;
  std::mt19937_64 rng(7);
  const ScoringMode modes[] = {ScoringMode::SumSupport, ScoringMode::AvgSupport, ScoringMode::MinSupport};
  int sets = 0;
  std::size_t total = 0;
  while (sets < 100) {
    auto rg = testing::make_random_graph(rng, 10, 30);
    PathQuery q;
    q.src = rg.nodes.front();
    q.dst = rg.nodes.back();
    q.max_hops = 4;
    auto found = enumerate_paths(rg.graph, q);
    if (found.paths.size() < 2) continue;
    const ScoringMode mode = modes[sets % 3];
    std::map<EdgeKey, std::size_t> support;
    for (const auto& e : rg.edges) support[e.key] = e.papers.size();
    for (auto& p : found.paths) {
      p.score = score_path(rg.graph, p, mode);
      std::vector<std::size_t> sup;
      for (const auto& k : p.edges) sup.push_back(support.at(k));
      const auto [num, den] = oracle::score_fraction(sup, mode);
      out.check(p.score == Rational(num, den), "set " + std::to_string(sets) + " score mismatch");
    }
    const std::size_t top_k = 1 + rng() % (found.paths.size() + 2);
    const auto want = serialize(oracle::rank_sort(found.paths, top_k));
    for (int run = 0; run < 3; ++run) {
      auto shuffled = found.paths;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      const auto got = serialize(rank_paths(std::move(shuffled), top_k));
      out.check(got == want, "set " + std::to_string(sets) + " run " + std::to_string(run) + " differs from oracle");
    }
    total += found.paths.size();
    ++sets;
  }
  out.note = "100 path sets, " + std::to_string(total) + " paths, 3 shuffled runs each";
  return out;
}

// ---- 3. salience conservation on fixture queries ---------------------------

Outcome salience(const KnowledgeBase& kb) {
  Outcome out;
  std::vector<std::string> ids;
  for (const auto* e : kb.graph.live_entities()) ids.push_back(e->id);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) pairs.emplace_back(ids[i], ids[j]);
  }
  std::mt19937_64 rng(50);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  const ScoringMode modes[] = {ScoringMode::SumSupport, ScoringMode::AvgSupport, ScoringMode::MinSupport};
  int done = 0;
  for (const auto& [src, dst] : pairs) {
    if (done == 50) break;
    PathQuery q;
    q.src = src;
    q.dst = dst;
    q.mode = modes[done % 3];
    q.top_k = 5 + done % 7;
    ScoredSubgraph sg;
    try {
      sg = connection_subgraph(kb.graph, q);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NoPathFound) continue;
      throw;
    }
    const std::string tag = src + "->" + dst;
    Rational lhs, rhs;
    for (const auto& [key, s] : sg.edge_salience) lhs += s;
    std::map<EdgeKey, Rational> expected;
    for (const auto& p : sg.paths) {
      std::vector<std::size_t> sup;
      for (const auto& k : p.edges) {
        std::set<std::string> papers;
        for (const auto& r : *kb.graph.find_edge(k)) papers.insert(r.paper_id);
        sup.push_back(papers.size());
      }
      const auto [num, den] = oracle::score_fraction(sup, q.mode);
      out.check(p.score == Rational(num, den), tag + " path score");
      rhs += p.score * Rational(static_cast<std::int64_t>(p.length()));
      for (const auto& k : p.edges) expected[k] += p.score;
    }
    out.check(lhs == rhs, tag + ": sum salience " + lhs.to_string() + " != " + rhs.to_string());
    out.check(expected == sg.edge_salience, tag + ": per-edge salience");
    ++done;
  }
  out.check(done == 50, "only " + std::to_string(done) + " fixture queries had paths");
  out.note = std::to_string(done) + " fixture queries";
  return out;
}

// ---- 4. incremental update equals rebuild ----------------------------------

Outcome incremental() {
  Outcome out;
  std::size_t ops = 0, errors = 0;
  for (int seq = 0; seq < 100; ++seq) {
    testing::BundleFactory factory(1000 + seq);
    std::mt19937_64 rng(seq);
    KnowledgeBase kb;
    std::map<std::string, std::string> live;  // paper id -> raw bundle
    const int steps = 6 + static_cast<int>(rng() % 10);
    for (int step = 0; step < steps; ++step) {
      ResolvedUpdate u;
      std::set<std::string> touched;
      const int batch = 1 + static_cast<int>(rng() % 3);
      for (int b = 0; b < batch; ++b) {
        const std::string id = "SYN" + std::to_string(rng() % 10);
        if (!touched.insert(id).second) continue;
        if (!live.count(id)) {
          u.added.push_back(resolve_bundle(id, factory.make(id)));
        } else if (rng() % 2) {
          u.removed.push_back(id);
        } else {
          u.updated.push_back(resolve_bundle(id, factory.make(id)));
        }
      }
      const auto s = apply_update(kb, u);
      errors += s.errors.size();
      for (const auto& id : s.removed) live.erase(id);
      for (const auto& rb : u.added) {
        if (rb.bundle && std::count(s.added.begin(), s.added.end(), rb.bundle->paper_id)) live[rb.bundle->paper_id] = rb.raw;
      }
      for (const auto& rb : u.updated) {
        if (rb.bundle && std::count(s.updated.begin(), s.updated.end(), rb.bundle->paper_id)) {
          live[rb.bundle->paper_id] = rb.raw;
        }
      }
      ops += u.added.size() + u.removed.size() + u.updated.size();
    }
    std::vector<std::string> raws;
    for (const auto& [id, raw] : live) raws.push_back(raw);
    std::shuffle(raws.begin(), raws.end(), rng);
    KnowledgeBase fresh;
    for (const auto& raw : raws) ingest_bundle(fresh, parse_document_bundle(raw));
    out.check(canonical_dump(kb.graph) == canonical_dump(fresh.graph), "sequence " + std::to_string(seq) + " graph");
    out.check(kb.corpus.canonical_dump() == fresh.corpus.canonical_dump(),
              "sequence " + std::to_string(seq) + " corpus");
    out.check(kb.stats() == fresh.stats(), "sequence " + std::to_string(seq) + " stats");
  }
  out.check(errors == 0, std::to_string(errors) + " per-paper errors in generated updates");
  out.note = "100 sequences, " + std::to_string(ops) + " paper operations";
  return out;
}

// ---- 5. evidence ranking ---------------------------------------------------

Outcome evidence(const KnowledgeBase& kb) {
  Outcome out;
  const HashingEmbeddingProvider provider;
  const auto& corpus = kb.corpus;
  out.check(corpus.sentence_count() == 200, "fixture has " + std::to_string(corpus.sentence_count()) + " sentences");

  const std::vector<std::string> queries{
      "losartan p53 expression",     "angiotensin receptor blockade", "virtual screening docking",
      "mice model of infection",      "clinical trial phase",          "cathepsin L inhibition",
      "ACE2 binding spike",           "hepatotoxicity adverse effect", "cytokine release syndrome IL6",
      "Vero E6 cytopathic effect",    "malaria treatment amodiaquine", "lung cancer tumor suppressor",
      "TMPRSS2 priming",              "obesity TNF",                   "phosphorylation of EIF2AK2",
      "remdesivir antiviral",         "hypertension benazepril",       "funding grant support",
      "flow cytometry hepatic",       "chloroquine",                   "in vitro assay",
      "SARS-CoV-2 replication",       "reviewers helpful comments",    "tumor protein p53 lung",
      "expression decreased after treatment"};
  ContextVectorCache cache;
  for (const auto& q : queries) {
    const auto got = rank_evidence(provider, corpus, q, std::nullopt, corpus.sentence_count(), &cache);
    const auto want = oracle::brute_force_evidence(corpus, q);
    out.check(got.size() == want.size(), q + ": result count");
    for (std::size_t i = 0; i < std::min(got.size(), want.size()); ++i) {
      const SentenceRef ref{got[i].sentence.paper_id, got[i].sentence.sentence_idx};
      out.check(std::abs(got[i].similarity - want[i].similarity) <= 1e-12, q + ": similarity at rank " + std::to_string(i));
      // Positions may differ only inside a group of floating-point ties.
      out.check(ref == want[i].ref || std::abs(want[i].similarity - got[i].similarity) <= 1e-12,
                q + ": order at rank " + std::to_string(i));
    }
  }

  // Self-similarity: each sentence alone as a one-sentence paper.
  std::size_t self_checks = 0;
  for (const auto& ref : corpus.all_sentences()) {
    if (ref.sentence_idx % 8 != 0) continue;
    const auto* s = corpus.sentence(ref);
    Corpus solo;
    solo.add_paper(PaperRecord{"SOLO", "solo", {}, {}, "", "2020-01-01", true, "solo"},
                   {SentenceRecord{"SOLO", 0, Section::Body, s->text, {}}});
    const auto hits = rank_evidence(provider, solo, s->text, std::nullopt, 1);
    out.check(hits.size() == 1 && std::abs(hits[0].similarity - 1.0) <= 1e-6, "self similarity " + ref.paper_id);
    ++self_checks;
  }

  std::size_t vectors = 0;
  for (const auto& ref : corpus.all_sentences()) {
    const auto c = embed_context(provider, corpus, ref.paper_id, ref.sentence_idx);
    const auto e = provider.embed(corpus.sentence(ref)->text);
    out.check(std::abs(l2_norm(c) - 1.0) <= 1e-9 && std::abs(l2_norm(e) - 1.0) <= 1e-9, "norm " + ref.paper_id);
    vectors += 2;
  }
  for (const auto& q : queries) {
    out.check(std::abs(l2_norm(provider.embed(q)) - 1.0) <= 1e-9, "query norm");
    ++vectors;
  }
  out.note = std::to_string(queries.size()) + " queries over " + std::to_string(corpus.sentence_count()) +
             " sentences, " + std::to_string(self_checks) + " self checks, " + std::to_string(vectors) + " unit vectors";
  return out;
}

// ---- 6. meta-query against a naive scan ------------------------------------

Outcome meta_query(const KnowledgeBase& kb) {
  Outcome out;
  const std::vector<std::string> patterns{
      "CHEMICAL GENE",     "CHEMICAL CHEMICAL", "GENE GENE",          "CHEMICAL DISEASE",  "GENE DISEASE",
      "PROTEIN binding",   "CHEMICAL CELL_LINE", "Losartan screening", "CHEMICAL mice",     "DISEASE treatment",
      "ORGANISM",          "CHEMICAL trial",    "GENE expression",    "CHEMICAL GENE DISEASE", "MAMMAL model",
      "CELL_LINE assay",   "ENZYME CHEMICAL",   "virtual docking",    "CHEMICAL vitro",    "GENE GENE CHEMICAL"};
  std::size_t hits = 0;
  for (const auto& p : patterns) {
    const auto mq = parse_meta_query(p);
    const auto got = match_meta_query(kb.corpus, mq, 100000);
    const auto want = oracle::naive_meta_scan(kb.corpus, mq);
    out.check(got.size() == want.size(), p + ": " + std::to_string(got.size()) + " vs " + std::to_string(want.size()));
    for (std::size_t i = 0; i < std::min(got.size(), want.size()); ++i) {
      const SentenceRef ref{got[i].sentence.paper_id, got[i].sentence.sentence_idx};
      out.check(ref == want[i].ref && got[i].span == want[i].span, p + ": rank " + std::to_string(i));
      out.check(got[i].matched_tokens == mq.tokens.size(), p + ": matched tokens");
    }
    hits += want.size();
  }
  out.note = std::to_string(patterns.size()) + " patterns, " + std::to_string(hits) + " matching sentences";
  return out;
}

// ---- 7. figure layout ------------------------------------------------------

struct SyntheticFigure {
  FigureLayout layout;
  std::map<std::string, std::string> caption_truth;
};

SyntheticFigure make_figure(std::mt19937_64& rng, int n) {
  SyntheticFigure f;
  f.layout.figure_id = "SYN-fig" + std::to_string(n);
  const int panels = 1 + static_cast<int>(rng() % 6);
  const int cols = 1 + static_cast<int>(rng() % 3);
  const bool markers = rng() % 6 != 0;
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  for (int p = 0; p < panels; ++p) {
    const double cx = (p % cols) * 200.0, cy = (p / cols) * 200.0;
    const double x0 = cx + uni(10, 30), y0 = cy + uni(20, 40);
    const double x1 = cx + uni(150, 190), y1 = cy + uni(150, 190);
    // Split some panels into two side-by-side regions.
    if (rng() % 3 == 0) {
      const double mid = (x0 + x1) / 2;
      f.layout.regions.push_back({x0, y0, mid - 1, y1});
      f.layout.regions.push_back({mid + 1, y0, x1, y1});
    } else {
      f.layout.regions.push_back({x0, y0, x1, y1});
    }
    const char letter = static_cast<char>('A' + p);
    if (markers) {
      const double mx = cx + uni(0, 20), my = cy + uni(0, 10);
      const std::string forms[] = {std::string(1, letter), "(" + std::string(1, letter) + ")",
                                   std::string(1, static_cast<char>(letter + 32)) + ")", std::string(1, letter) + "."};
      f.layout.text_boxes.push_back({{mx, my, mx + 8, my + 10}, forms[rng() % 4]});
    }
    f.layout.text_boxes.push_back({{x0 + 5, y0 + 5, x0 + 40, y0 + 15}, "label" + std::to_string(p)});
  }
  std::string caption = "Figure " + std::to_string(n) + ".";
  f.caption_truth["*"] = caption;
  if (markers && rng() % 4 != 0) {
    for (int p = 0; p < panels; ++p) {
      const std::string letter(1, static_cast<char>('A' + p));
      const std::string text = "Panel " + letter + " shows result " + std::to_string(rng() % 100) + ".";
      caption += (rng() % 2 ? "  " : " ") + ("(" + letter + ")") + (rng() % 2 ? "\t" : " ") + text;
      f.caption_truth[letter] = text;
    }
  } else {
    caption += " Overview of all panels.";
    f.caption_truth["*"] = caption;
  }
  f.layout.caption = caption;
  return f;
}

Outcome figure_layout() {
  Outcome out;
  std::mt19937_64 rng(30);
  std::size_t regions = 0, records = 0;
  for (int n = 0; n < 30; ++n) {
    const auto fig = make_figure(rng, n + 1);
    const std::string tag = fig.layout.figure_id;
    const auto detection = detect_markers(fig.layout.text_boxes);
    const auto assignment = assign_markers(detection.markers, fig.layout.regions);

    // Assignment against the exhaustive distance oracle.
    const auto truth = oracle::nearest_markers(detection.markers, fig.layout.regions);
    std::map<std::size_t, std::optional<char>> owner;
    for (const auto& [m, idx] : assignment) {
      for (auto i : idx) {
        out.check(!owner.count(i), tag + ": region assigned twice");
        owner[i] = m;
      }
    }
    out.check(owner.size() == fig.layout.regions.size(), tag + ": unassigned region");
    for (std::size_t i = 0; i < truth.size(); ++i) {
      out.check(owner.count(i) && owner[i] == truth[i], tag + ": region " + std::to_string(i));
    }
    regions += truth.size();

    // Hull minimality, checked geometrically.
    const auto recs = process_figure(fig.layout).records;
    for (const auto& r : recs) {
      double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
      for (auto i : r.region_indices) {
        const auto& b = fig.layout.regions[i];
        out.check(r.bbox.x0 <= b.x0 && r.bbox.y0 <= b.y0 && b.x1 <= r.bbox.x1 && b.y1 <= r.bbox.y1,
                  tag + ": region outside hull");
        x0 = std::min(x0, b.x0);
        y0 = std::min(y0, b.y0);
        x1 = std::max(x1, b.x1);
        y1 = std::max(y1, b.y1);
      }
      out.check(r.bbox == Box{x0, y0, x1, y1}, tag + ": hull not minimal");
      for (const auto& l : r.labels) {
        out.check(oracle::box_gap_sq(l.box, r.bbox) == 0.0, tag + ": label outside hull");
      }
      ++records;
    }

    // Caption split and reconstruction.
    const auto split = split_caption(fig.layout.caption);
    out.check(split.as_map() == fig.caption_truth, tag + ": caption map");
    out.check(oracle::squash_whitespace(split.reconstruct()) == oracle::squash_whitespace(fig.layout.caption),
              tag + ": caption reconstruction");
  }
  out.note = "30 layouts, " + std::to_string(regions) + " regions, " + std::to_string(records) + " subfigures";
  return out;
}

// ---- 8. drug reports -------------------------------------------------------

Outcome reports(const KnowledgeBase& kb) {
  Outcome out;
  const DataStore store(testing::fixture_data_dir());
  const auto figures = store.figures();
  const auto templates = store.templates();
  struct Case {
    std::string name, drug;
    std::vector<std::string> targets;
  };
  const std::vector<Case> cases{
      {"losartan", "MESH:D008784", {"GENE:59272", "LOCAL:cathepsin-l-pseudogene-2", "MESH:D008175"}},
      {"benazepril", "MESH:C044946", {"GENE:59272"}},
      {"amodiaquine", "MESH:D000655", {"GENE:1514", "GENE:59272"}},
  };
  for (const auto& c : cases) {
    ReportRequest rr;
    rr.drug = c.drug;
    rr.targets = c.targets;
    const auto report = generate_report(kb, rr, templates, figures);
    out.check(report.answers.size() == 11, c.name + ": " + std::to_string(report.answers.size()) + " sections");
    for (std::size_t i = 0; i < report.answers.size(); ++i) {
      out.check(report.answers[i].number == static_cast<int>(i + 1), c.name + ": section numbering");
    }
    const auto structured = render_report(report, ReportFormat::Structured);
    const fs::path golden = fs::path(LITKG_GOLDEN_DIR) / (c.name + ".report.json");
    std::string expected;
    try {
      expected = testing::read_text(golden);
    } catch (const std::exception&) {
      out.check(false, c.name + ": missing golden " + golden.string());
      continue;
    }
    out.check(structured == expected, c.name + ": structured output differs from golden");

    if (c.name == "losartan") {
      const auto& q3 = report.answers[2];
      bool chain = false;
      for (const auto& item : q3.items) {
        if (item.kind != AnswerKind::SubgraphRef) continue;
        chain = chain || (item.text.find("Losartan") != std::string::npos &&
                          item.text.find("tumor protein p53") != std::string::npos &&
                          item.text.find("lung cancer") != std::string::npos);
      }
      out.check(chain, "losartan: drug-gene-disease chain missing");
      bool via_p53 = false;
      for (const auto& t : report.subgraphs) {
        if (t.target != "MESH:D008175" || !t.subgraph) continue;
        for (const auto& p : t.subgraph->paths) {
          via_p53 = via_p53 || p.nodes == std::vector<std::string>{"MESH:D008784", "GENE:7157", "MESH:D008175"};
        }
      }
      out.check(via_p53, "losartan: subgraph lacks the p53 path");
    }
  }
  out.note = "3 reports against golden files";
  return out;
}

// ---- 9. service ------------------------------------------------------------

int independent_status(ErrorCode c) {
  static const std::map<std::string, int> table{
      {"UnknownEntity", 404},   {"UnknownEdge", 404},        {"NoPathFound", 404},
      {"UnknownSentence", 404}, {"NotFound", 404},           {"EmptyQuery", 400},
      {"InvalidArgument", 400}, {"UnknownFacet", 400},       {"UnknownFormat", 400},
      {"UnknownPlaceholder", 400}, {"ConfigError", 500},     {"Internal", 500},
  };
  const auto it = table.find(std::string(to_string(c)));
  return it == table.end() ? 422 : it->second;
}

Outcome service(const KnowledgeBase& kb) {
  Outcome out;
  const auto svc = Service::from_data_dir(testing::fixture_data_dir());
  HttpRequest stats_req;
  stats_req.path = "/stats";
  const auto resp = svc->handle(stats_req);
  out.check(resp.status == 200, "/stats status");
  out.check(resp.body == stats_json(kb.stats()), "/stats differs from stats()");
  const auto expected = json::parse(testing::read_text(testing::fixture_dir() / "expected" / "stats_ctd.json"));
  out.check(json::parse(resp.body) == expected, "/stats differs from the independent recount");

  // Facet anti-monotonicity through the endpoint.
  const std::vector<std::string> kinds{"EntityName", "CoarseType", "FineType", "RelationSubtype",
                                       "EventType",  "Action",     "PaperId"};
  auto facets = [&](const std::string& kind, const std::vector<std::string>& constraints) {
    HttpRequest r;
    r.path = "/facets";
    r.query.emplace("kind", kind);
    for (const auto& c : constraints) r.query.emplace("c", c);
    const auto res = svc->handle(r);
    std::map<std::string, std::size_t> counts;
    if (res.status != 200) return counts;
    const auto body = json::parse(res.body);
    for (const auto& e : body.at("entries")) counts[e.at("term")] = e.at("count");
    return counts;
  };
  std::mt19937_64 rng(9);
  int additions = 0;
  std::vector<std::string> constraints;
  for (int attempts = 0; additions < 50 && attempts < 1000; ++attempts) {
    if (constraints.size() >= 3) constraints.clear();
    const auto& kind = kinds[rng() % kinds.size()];
    const auto current = facets(kind, constraints);
    if (current.empty()) {
      constraints.clear();
      continue;
    }
    auto it = current.begin();
    std::advance(it, static_cast<long>(rng() % current.size()));
    auto next = constraints;
    next.push_back(kind + ":" + it->first);
    for (const auto& probe : kinds) {
      const auto before = facets(probe, constraints);
      for (const auto& [term, count] : facets(probe, next)) {
        const auto b = before.find(term);
        out.check(b != before.end() && count <= b->second, "facet " + probe + ":" + term + " grew");
      }
    }
    constraints = std::move(next);
    ++additions;
  }
  out.check(additions == 50, "only " + std::to_string(additions) + " facet additions");

  // Every error code through the envelope.
  int codes = 0;
  for (int i = 0; i <= static_cast<int>(ErrorCode::Internal); ++i) {
    const auto code = static_cast<ErrorCode>(i);
    const auto r = error_response(Error(code, "m" + std::to_string(i), "d" + std::to_string(i)));
    const auto back = error_from_response(r);
    out.check(r.status == independent_status(code), std::string(to_string(code)) + " status");
    out.check(back && back->code() == code && back->what() == "m" + std::to_string(i) &&
                  back->detail() == "d" + std::to_string(i),
              std::string(to_string(code)) + " round trip");
    ++codes;
  }

  out.note = "/stats, " + std::to_string(additions) + " facet additions, " + std::to_string(codes) +
             " error codes, no secondary component";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const auto kb = testing::load_fixture_datadir();
  const std::vector<Criterion> criteria{
      {"1 path-oracle", path_oracle},
      {"2 ranking", ranking},
      {"3 salience", [&] { return salience(kb); }},
      {"4 incremental-update", incremental},
      {"5 evidence", [&] { return evidence(kb); }},
      {"6 meta-query", [&] { return meta_query(kb); }},
      {"7 figure-layout", figure_layout},
      {"8 report", [&] { return reports(kb); }},
      {"9 service", [&] { return service(kb); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.name;
    if (!o.note.empty()) std::cout << "  (" << o.note << ")";
    std::cout << "\n";
    for (const auto& f : o.failures) std::cout << "      " << f << "\n";
    if (!o.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
