// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "litkg/report.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>

#include "json_codec.hpp"
#include "litkg/error.hpp"
#include "litkg/meta_query.hpp"
#include "text_util.hpp"

namespace litkg {

using detail::ordered_json;

namespace {

std::string normalize_space(std::string_view s) {
  std::string out;
  for (const auto& w : detail::split_whitespace(s)) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

std::string entity_name(const KnowledgeGraph& graph, std::string_view id) {
  const auto* e = graph.find_entity(id);
  return e ? e->name : std::string(id);
}

std::optional<std::uint32_t> first_mention(const Corpus& corpus, std::string_view paper_id, std::string_view entity) {
  for (const auto& s : corpus.sentences_of(paper_id)) {
    for (const auto& m : s.mentions) {
      if (m.entity_id == entity) return s.sentence_idx;
    }
  }
  return std::nullopt;
}

std::vector<ProvenanceRef> first_refs(const Provenance& prov, std::size_t n) {
  std::vector<ProvenanceRef> out;
  for (auto it = prov.begin(); it != prov.end() && out.size() < n; ++it) out.push_back(*it);
  return out;
}

AnswerItem not_found(std::string query) {
  return AnswerItem{AnswerKind::NotFound, "Not found", {}, std::move(query)};
}

QuestionAnswer make_answer(int number, std::vector<AnswerItem> items, std::string not_found_query) {
  QuestionAnswer qa;
  qa.number = number;
  qa.question = std::string(report_questions()[static_cast<std::size_t>(number)]);
  if (items.empty()) items.push_back(not_found(std::move(not_found_query)));
  std::set<ProvenanceRef> all;
  for (const auto& item : items) all.insert(item.evidence.begin(), item.evidence.end());
  qa.items = std::move(items);
  qa.evidence.assign(all.begin(), all.end());
  return qa;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string join_set(const std::set<std::string>& parts) {
  return join(std::vector<std::string>(parts.begin(), parts.end()), ",");
}

std::vector<AnswerItem> subtype_facts(const KnowledgeGraph& graph, const std::string& drug,
                                      const std::set<std::string>& subtypes, std::size_t per_item) {
  std::vector<std::pair<std::size_t, EdgeKey>> hits;
  for (const auto& key : graph.incident(drug)) {
    if (key.category == Category::ChemicalDisease && subtypes.count(key.subtype) > 0) {
      hits.emplace_back(graph.support(key), key);
    }
  }
  std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<AnswerItem> items;
  for (const auto& [support, key] : hits) {
    std::string text = entity_name(graph, key.src) + " " + key.subtype + " " + entity_name(graph, key.dst) + " (" +
                       std::string(to_string(key.action)) + ", support " + std::to_string(support) + ")";
    items.push_back({AnswerKind::KgFact, std::move(text), first_refs(*graph.find_edge(key), per_item), {}});
  }
  return items;
}

std::vector<std::string> drug_variants(const KnowledgeGraph& graph, const std::string& drug) {
  std::set<std::string> out;
  if (const auto* e = graph.find_entity(drug)) {
    out.insert(normalize_space(detail::lower(e->name)));
    for (const auto& a : e->aliases) out.insert(normalize_space(detail::lower(a)));
  }
  out.erase("");
  return {out.begin(), out.end()};
}

std::vector<AnswerItem> template_evidence(const Corpus& corpus, const std::vector<std::string>& patterns,
                                          const std::vector<std::string>& variants, std::size_t limit) {
  std::vector<AnswerItem> items;
  std::set<SentenceRef> seen;
  for (const auto& pattern : patterns) {
    for (const auto& variant : variants) {
      const auto mq = parse_meta_query(replace_all(pattern, kDrugPlaceholder, variant));
      for (const auto& m : match_meta_query(corpus, mq, limit)) {
        if (items.size() >= limit) return items;
        SentenceRef ref{m.sentence.paper_id, m.sentence.sentence_idx};
        if (!seen.insert(ref).second) continue;
        items.push_back({AnswerKind::EvidenceSentence, m.sentence.text,
                         {ProvenanceRef{ref.paper_id, ref.sentence_idx, std::nullopt}}, {}});
      }
    }
  }
  return items;
}

std::string path_text(const KnowledgeGraph& graph, const Path& p) {
  std::vector<std::string> names;
  for (const auto& n : p.nodes) names.push_back(entity_name(graph, n));
  return join(names, " — ") + " (score " + p.score.to_string() + ")";
}

bool mentions_funding(std::string_view text) {
  return std::any_of(funding_lexicon().begin(), funding_lexicon().end(),
                     [&](const std::string& w) { return detail::icontains(text, w); });
}

Rational parse_rational(const std::string& s, const std::string& path) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    detail::schema_error("invalid rational", path);
  }
}

ordered_json refs_json(const std::vector<ProvenanceRef>& refs) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : refs) arr.push_back(detail::to_json(r));
  return arr;
}

template <typename Json>
std::vector<ProvenanceRef> refs_from_json(const Json& arr, const std::string& path) {
  if (!arr.is_array()) detail::schema_error("expected an array", path);
  std::vector<ProvenanceRef> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(detail::provenance_from_json(arr[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string footnotes(const std::vector<ProvenanceRef>& refs) {
  std::string out;
  for (const auto& r : refs) {
    out += r.paper_id == kCuratedSource ? " [CTD]" : " [" + r.paper_id + ":" + std::to_string(r.sentence_idx) + "]";
  }
  return out;
}

}  // namespace

const std::array<std::string_view, kQuestionCount + 1>& report_questions() {
  static const std::array<std::string_view, kQuestionCount + 1> questions{
      "",
      "Current indication: what is the drug class? What is it currently approved to treat?",
      "Molecular structure (symbols desired, but a pointer to a reference is also useful)",
      "Mechanism of action i.e., inhibits viral entry, replication, etc. (w/ a pointer to data)",
      "Was the drug identified by manual or computation screen?",
      "Who is studying the drug? (Source/lab name)",
      "In vitro Data available (cell line used, assays run, viral strain used, cytopathic effects, toxicity, LD50, "
      "dosage response curve, etc.)",
      "Animal Data Available (what animal model, LD50, dosage response curve, etc.)",
      "Clinical trials on going (what phase, facility, target population, dosing, intervention etc.)",
      "Funding source",
      "Has the drug shown evidence of systemic toxicity?",
      "List of relevant sources to pull data from.",
  };
  return questions;
}

const std::vector<std::string>& funding_lexicon() {
  static const std::vector<std::string> words{"grant", "funded", "funding", "supported by", "award"};
  return words;
}

ReportTemplates ReportTemplates::parse(std::string_view text) {
  ReportTemplates t;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  int section = 0;
  auto fail = [&](const char* what) { throw Error(ErrorCode::ConfigError, what, "line " + std::to_string(line_no)); };
  while (std::getline(in, line)) {
    ++line_no;
    const auto s = detail::trim(line);
    if (s.empty() || s.front() == '#') continue;
    if (s.front() == '[') {
      if (s.size() < 4 || s.back() != ']' || (s[1] != 'q' && s[1] != 'Q')) fail("expected [qN] header");
      try {
        std::size_t used = 0;
        const std::string digits(s.substr(2, s.size() - 3));
        section = std::stoi(digits, &used);
        if (used != digits.size()) fail("expected [qN] header");
      } catch (const std::logic_error&) {
        fail("expected [qN] header");
      }
      if (section < 1 || section > static_cast<int>(kQuestionCount)) fail("question number out of range");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) fail("expected key = value");
    if (section == 0) fail("entry before any [qN] header");
    const auto key = detail::trim(s.substr(0, eq));
    const auto value = detail::trim(s.substr(eq + 1));
    if (key == "query") {
      if (value.size() < 2 || value.front() != '"' || value.back() != '"') fail("query must be double-quoted");
      std::string q(value.substr(1, value.size() - 2));
      try {
        parse_meta_query(replace_all(q, kDrugPlaceholder, "drug"));
      } catch (const Error& e) {
        throw Error(ErrorCode::ConfigError, std::string("invalid query: ") + e.what(), "line " + std::to_string(line_no));
      }
      t.queries[section].push_back(std::move(q));
    } else if (key == "subtypes") {
      for (auto& st : detail::split_list(value, ',')) t.subtypes[section].insert(std::move(st));
    } else {
      fail("unknown key");
    }
  }
  return t;
}

ReportTemplates ReportTemplates::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open report templates", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const ReportTemplates& ReportTemplates::builtin() {
  static const ReportTemplates templates = parse(builtin_report_templates_text());
  return templates;
}

const std::set<std::string>& ReportTemplates::therapeutic() const {
  static const std::set<std::string> empty;
  auto it = subtypes.find(1);
  return it == subtypes.end() ? empty : it->second;
}

const std::set<std::string>& ReportTemplates::toxicity() const {
  static const std::set<std::string> empty;
  auto it = subtypes.find(10);
  return it == subtypes.end() ? empty : it->second;
}

std::string to_string(AnswerKind kind) {
  switch (kind) {
    case AnswerKind::KgFact: return "KgFact";
    case AnswerKind::EvidenceSentence: return "EvidenceSentence";
    case AnswerKind::MetadataFact: return "MetadataFact";
    case AnswerKind::SubgraphRef: return "SubgraphRef";
    case AnswerKind::NotFound: return "NotFound";
  }
  return "NotFound";
}

std::optional<AnswerKind> parse_answer_kind(std::string_view s) {
  for (auto k : {AnswerKind::KgFact, AnswerKind::EvidenceSentence, AnswerKind::MetadataFact, AnswerKind::SubgraphRef,
                 AnswerKind::NotFound}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

QuestionAnswer answer_metadata_question(const KnowledgeBase& kb, std::string_view drug, MetadataQuestion which,
                                        std::span<const QuestionAnswer> answered) {
  const std::string id(drug);
  if (!kb.graph.contains_entity(id)) throw Error(ErrorCode::UnknownEntity, "entity not found", id);
  const auto& corpus = kb.corpus;

  if (which == MetadataQuestion::Affiliations) {
    std::map<std::string, std::vector<ProvenanceRef>> affiliations;
    for (const auto& paper_id : corpus.papers_mentioning(id)) {
      const auto idx = first_mention(corpus, paper_id, id);
      for (const auto& a : corpus.paper(paper_id)->affiliations) {
        const auto name = normalize_space(a);
        if (!name.empty()) affiliations[name].push_back(ProvenanceRef{paper_id, *idx, std::nullopt});
      }
    }
    std::vector<AnswerItem> items;
    for (auto& [name, refs] : affiliations) {
      std::sort(refs.begin(), refs.end());
      refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
      items.push_back({AnswerKind::MetadataFact, name, std::move(refs), {}});
    }
    return make_answer(5, std::move(items), "affiliations of papers mentioning " + id);
  }

  // Sources: each fact counts once per paper that supports it.
  std::map<std::string, std::size_t> counts;
  std::map<std::string, ProvenanceRef> first_ref;
  auto count_fact = [&](const auto& refs) {
    std::set<std::string> papers;
    for (const ProvenanceRef& r : refs) {
      if (r.paper_id == kCuratedSource) continue;
      papers.insert(r.paper_id);
      auto [it, fresh] = first_ref.emplace(r.paper_id, r);
      if (!fresh && r < it->second) it->second = r;
    }
    for (const auto& p : papers) ++counts[p];
  };
  if (!answered.empty()) {
    for (const auto& qa : answered) {
      for (const auto& item : qa.items) {
        if (item.kind != AnswerKind::NotFound) count_fact(item.evidence);
      }
    }
  } else {
    for (const auto& key : kb.graph.incident(id)) count_fact(*kb.graph.find_edge(key));
    for (const auto& [key, prov] : kb.graph.events()) {
      if (std::any_of(key.roles.begin(), key.roles.end(), [&](const auto& r) { return r.second == id; })) {
        count_fact(prov);
      }
    }
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<AnswerItem> items;
  for (const auto& [paper_id, n] : ranked) {
    const auto* paper = corpus.paper(paper_id);
    std::string text = paper_id + ": " + (paper ? paper->title : std::string()) + " (" + std::to_string(n) +
                       (n == 1 ? " fact)" : " facts)");
    std::vector<ProvenanceRef> evidence;
    const auto& r = first_ref.at(paper_id);
    evidence.push_back(ProvenanceRef{r.paper_id, r.sentence_idx, std::nullopt});
    items.push_back({AnswerKind::MetadataFact, std::move(text), std::move(evidence), {}});
  }
  return make_answer(11, std::move(items), "papers supporting facts about " + id);
}

DrugReport generate_report(const KnowledgeBase& kb, const ReportRequest& request, const ReportTemplates& templates,
                           std::span<const FigureLayout> figures) {
  const auto& graph = kb.graph;
  const auto& corpus = kb.corpus;
  if (!graph.contains_entity(request.drug)) throw Error(ErrorCode::UnknownEntity, "drug not found", request.drug);
  if (request.targets.empty()) throw Error(ErrorCode::InvalidArgument, "at least one target is required");
  std::set<std::string> targets(request.targets.begin(), request.targets.end());
  for (const auto& t : targets) {
    if (!graph.contains_entity(t)) throw Error(ErrorCode::UnknownEntity, "target not found", t);
  }
  if (request.evidence_per_answer == 0) throw Error(ErrorCode::InvalidArgument, "evidence_per_answer must be positive");

  DrugReport report;
  report.request = request;
  report.request.targets.assign(targets.begin(), targets.end());
  report.drug_name = entity_name(graph, request.drug);
  if (request.as_of) {
    report.generated = *request.as_of;
  } else {
    for (const auto* p : corpus.papers()) report.generated = std::max(report.generated, p->pub_date);
    if (report.generated.empty()) report.generated = "1970-01-01";
  }

  const auto& drug = request.drug;
  const std::size_t per = request.evidence_per_answer;
  const auto variants = drug_variants(graph, drug);
  auto queries_for = [&](int q) {
    auto it = templates.queries.find(q);
    return it == templates.queries.end() ? std::vector<std::string>{} : it->second;
  };
  auto describe_queries = [&](int q) {
    std::vector<std::string> shown;
    for (const auto& pattern : queries_for(q)) {
      shown.push_back(replace_all(pattern, kDrugPlaceholder, variants.empty() ? drug : variants.front()));
    }
    return shown.empty() ? std::string("no query configured") : "meta-query " + join(shown, "; ");
  };
  auto& answers = report.answers;

  answers.push_back(make_answer(1, subtype_facts(graph, drug, templates.therapeutic(), per),
                                "ChemicalDisease edges of " + drug + " with subtype in {" +
                                    join_set(templates.therapeutic()) + "}"));

  {
    std::vector<AnswerItem> items;
    const auto aliases = graph.alias_index();
    for (const auto& layout : figures) {
      AlignResult result;
      try {
        result = process_figure(layout, &aliases);
      } catch (const Error&) {
        continue;
      }
      for (const auto& rec : result.records) {
        for (const auto& g : rec.groundings) {
          if (g.entity_id != drug) continue;
          std::string text = "Figure " + g.figure_id;
          if (g.marker) text += " panel " + std::string(1, *g.marker);
          text += " depicts " + report.drug_name;
          std::vector<ProvenanceRef> evidence;
          if (auto idx = first_mention(corpus, layout.paper_id, drug)) {
            evidence.push_back(ProvenanceRef{layout.paper_id, *idx, std::nullopt});
          }
          items.push_back({AnswerKind::MetadataFact, std::move(text), std::move(evidence), {}});
        }
      }
    }
    std::size_t captions = 0;
    corpus.for_each_sentence([&](const SentenceRecord& s) {
      if (s.section != Section::Caption || captions >= per) return;
      if (std::none_of(s.mentions.begin(), s.mentions.end(), [&](const auto& m) { return m.entity_id == drug; })) return;
      items.push_back({AnswerKind::EvidenceSentence, s.text,
                       {ProvenanceRef{s.paper_id, s.sentence_idx, std::nullopt}}, {}});
      ++captions;
    });
    answers.push_back(make_answer(2, std::move(items), "figure groundings and captions mentioning " + drug));
  }

  {
    std::vector<std::future<TargetSubgraph>> jobs;
    for (const auto& target : targets) {
      jobs.push_back(std::async(std::launch::async, [&, target] {
        PathQuery q;
        q.src = drug;
        q.dst = target;
        q.max_hops = request.max_hops;
        q.top_k = request.top_k;
        q.mode = request.mode;
        try {
          return TargetSubgraph{target, connection_subgraph(graph, q)};
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NoPathFound) throw;
          return TargetSubgraph{target, std::nullopt};
        }
      }));
    }
    for (auto& j : jobs) report.subgraphs.push_back(j.get());
    std::vector<AnswerItem> items;
    for (const auto& ts : report.subgraphs) {
      if (!ts.subgraph) continue;
      for (const auto& p : ts.subgraph->paths) {
        std::vector<ProvenanceRef> evidence;
        for (const auto& key : p.edges) {
          const auto& ev = ts.subgraph->evidence.at(key);
          if (!ev.empty() && std::find(evidence.begin(), evidence.end(), ev.front()) == evidence.end()) {
            evidence.push_back(ev.front());
          }
        }
        items.push_back({AnswerKind::SubgraphRef, path_text(graph, p), std::move(evidence), {}});
      }
    }
    answers.push_back(make_answer(3, std::move(items),
                                  "paths from " + drug + " to " + join_set(targets) + " within " +
                                      std::to_string(request.max_hops) + " hops"));
  }

  answers.push_back(make_answer(4, template_evidence(corpus, queries_for(4), variants, per), describe_queries(4)));
  answers.push_back(answer_metadata_question(kb, drug, MetadataQuestion::Affiliations));
  answers.push_back(make_answer(6, template_evidence(corpus, queries_for(6), variants, per), describe_queries(6)));
  answers.push_back(make_answer(7, template_evidence(corpus, queries_for(7), variants, per), describe_queries(7)));
  answers.push_back(make_answer(8, template_evidence(corpus, queries_for(8), variants, per), describe_queries(8)));

  {
    std::vector<AnswerItem> items;
    for (const auto& paper_id : corpus.papers_mentioning(drug)) {
      bool found = false;
      for (const auto& s : corpus.sentences_of(paper_id)) {
        if (s.section == Section::Acknowledgements && mentions_funding(s.text)) {
          items.push_back({AnswerKind::EvidenceSentence, s.text,
                           {ProvenanceRef{s.paper_id, s.sentence_idx, std::nullopt}}, {}});
          found = true;
        }
      }
      const auto* paper = corpus.paper(paper_id);
      if (!found && mentions_funding(paper->acknowledgements)) {
        const auto idx = first_mention(corpus, paper_id, drug);
        items.push_back({AnswerKind::MetadataFact, normalize_space(paper->acknowledgements),
                         {ProvenanceRef{paper_id, *idx, std::nullopt}}, {}});
      }
    }
    answers.push_back(make_answer(9, std::move(items), "funding statements in papers mentioning " + drug));
  }

  answers.push_back(make_answer(10, subtype_facts(graph, drug, templates.toxicity(), per),
                                "ChemicalDisease edges of " + drug + " with subtype in {" +
                                    join_set(templates.toxicity()) + "}"));
  answers.push_back(answer_metadata_question(kb, drug, MetadataQuestion::Sources, answers));
  return report;
}

std::optional<ReportFormat> parse_report_format(std::string_view s) {
  if (s == "structured" || s == "json") return ReportFormat::Structured;
  if (s == "markdown" || s == "md") return ReportFormat::Markdown;
  return std::nullopt;
}

std::string render_report(const DrugReport& report, ReportFormat format) {
  const auto& req = report.request;
  if (format == ReportFormat::Structured) {
    ordered_json request = {{"drug", req.drug},
                            {"targets", req.targets},
                            {"max_hops", req.max_hops},
                            {"top_k", req.top_k},
                            {"mode", to_string(req.mode)},
                            {"evidence_per_answer", req.evidence_per_answer}};
    if (req.as_of) request["as_of"] = *req.as_of;
    ordered_json answers = ordered_json::array();
    for (const auto& qa : report.answers) {
      ordered_json items = ordered_json::array();
      for (const auto& item : qa.items) {
        ordered_json j = {{"kind", to_string(item.kind)}, {"text", item.text}, {"evidence", refs_json(item.evidence)}};
        if (item.kind == AnswerKind::NotFound) j["query"] = item.query;
        items.push_back(std::move(j));
      }
      answers.push_back({{"number", qa.number},
                         {"question", qa.question},
                         {"items", std::move(items)},
                         {"evidence", refs_json(qa.evidence)}});
    }
    ordered_json subgraphs = ordered_json::array();
    for (const auto& ts : report.subgraphs) {
      ordered_json j = {{"target", ts.target}};
      if (!ts.subgraph) {
        j["status"] = "NoPathFound";
      } else {
        const auto& sg = *ts.subgraph;
        j["status"] = "ok";
        j["truncated"] = sg.truncated;
        ordered_json paths = ordered_json::array();
        for (const auto& p : sg.paths) {
          ordered_json edges = ordered_json::array();
          for (const auto& e : p.edges) edges.push_back(detail::to_json(e));
          paths.push_back({{"nodes", p.nodes}, {"edges", std::move(edges)}, {"score", p.score.to_string()}});
        }
        ordered_json salience = ordered_json::array();
        for (const auto& [key, s] : sg.edge_salience) {
          salience.push_back({{"edge", detail::to_json(key)},
                              {"salience", s.to_string()},
                              {"evidence", refs_json(sg.evidence.at(key))}});
        }
        j["nodes"] = std::vector<std::string>(sg.nodes.begin(), sg.nodes.end());
        j["paths"] = std::move(paths);
        j["edges"] = std::move(salience);
      }
      subgraphs.push_back(std::move(j));
    }
    ordered_json root = {{"format", "litkg-report"},
                         {"version", 1},
                         {"generated", report.generated},
                         {"drug", {{"id", req.drug}, {"name", report.drug_name}}},
                         {"request", std::move(request)},
                         {"answers", std::move(answers)},
                         {"subgraphs", std::move(subgraphs)}};
    return root.dump(2) + "\n";
  }

  std::string md;
  md += "# Drug report: " + report.drug_name + " (" + req.drug + ")\n\n";
  md += "- Generated: " + report.generated + "\n";
  md += "- Targets: " + join(req.targets, ", ") + "\n";
  md += "- Paths: " + to_string(req.mode) + " support, up to " + std::to_string(req.max_hops) + " hops, top " +
        std::to_string(req.top_k) + "\n";
  for (const auto& qa : report.answers) {
    md += "\n## " + std::to_string(qa.number) + ". " + qa.question + "\n\n";
    for (const auto& item : qa.items) {
      if (item.kind == AnswerKind::NotFound) {
        md += "- Not found (searched: " + item.query + ")\n";
      } else {
        md += "- " + normalize_space(item.text) + footnotes(item.evidence) + "\n";
      }
    }
  }
  return md;
}

DrugReport report_from_json(std::string_view text) {
  const auto root = nlohmann::json::parse(text.begin(), text.end(), nullptr, false);
  if (root.is_discarded() || !root.is_object()) detail::schema_error("report must be a JSON object", "$");
  DrugReport r;
  try {
    r.generated = detail::require_string(root, "generated", "$");
    r.drug_name = detail::require_string(detail::require(root, "drug", "$"), "name", "$.drug");
    const auto& req = detail::require(root, "request", "$");
    r.request.drug = detail::require_string(req, "drug", "$.request");
    r.request.targets = req.at("targets").get<std::vector<std::string>>();
    r.request.max_hops = req.at("max_hops").get<int>();
    r.request.top_k = req.at("top_k").get<std::size_t>();
    auto mode = parse_scoring_mode(detail::require_string(req, "mode", "$.request"));
    if (!mode) detail::schema_error("unknown mode", "$.request.mode");
    r.request.mode = *mode;
    r.request.evidence_per_answer = req.at("evidence_per_answer").get<std::size_t>();
    if (req.contains("as_of")) r.request.as_of = req.at("as_of").get<std::string>();

    const auto& answers = detail::require(root, "answers", "$");
    for (std::size_t i = 0; i < answers.size(); ++i) {
      const std::string path = "$.answers[" + std::to_string(i) + "]";
      const auto& a = answers[i];
      QuestionAnswer qa;
      qa.number = a.at("number").get<int>();
      qa.question = detail::require_string(a, "question", path);
      const auto& items = detail::require(a, "items", path);
      for (std::size_t k = 0; k < items.size(); ++k) {
        const std::string ipath = path + ".items[" + std::to_string(k) + "]";
        AnswerItem item;
        auto kind = parse_answer_kind(detail::require_string(items[k], "kind", ipath));
        if (!kind) detail::schema_error("unknown answer kind", ipath + ".kind");
        item.kind = *kind;
        item.text = detail::require_string(items[k], "text", ipath);
        item.evidence = refs_from_json(detail::require(items[k], "evidence", ipath), ipath + ".evidence");
        if (items[k].contains("query")) item.query = items[k].at("query").get<std::string>();
        qa.items.push_back(std::move(item));
      }
      qa.evidence = refs_from_json(detail::require(a, "evidence", path), path + ".evidence");
      r.answers.push_back(std::move(qa));
    }

    const auto& subgraphs = detail::require(root, "subgraphs", "$");
    for (std::size_t i = 0; i < subgraphs.size(); ++i) {
      const std::string path = "$.subgraphs[" + std::to_string(i) + "]";
      const auto& s = subgraphs[i];
      TargetSubgraph ts;
      ts.target = detail::require_string(s, "target", path);
      if (detail::require_string(s, "status", path) == "ok") {
        ScoredSubgraph sg;
        sg.truncated = s.at("truncated").get<bool>();
        for (const auto& n : s.at("nodes")) sg.nodes.insert(n.get<std::string>());
        for (const auto& p : s.at("paths")) {
          Path path_rec;
          path_rec.nodes = p.at("nodes").get<std::vector<std::string>>();
          for (const auto& e : p.at("edges")) path_rec.edges.push_back(detail::edge_key_from_json(e, path + ".paths"));
          path_rec.score = parse_rational(p.at("score").get<std::string>(), path + ".paths.score");
          sg.paths.push_back(std::move(path_rec));
        }
        for (const auto& e : s.at("edges")) {
          const auto key = detail::edge_key_from_json(e.at("edge"), path + ".edges");
          sg.edge_salience[key] = parse_rational(e.at("salience").get<std::string>(), path + ".edges.salience");
          sg.evidence[key] = refs_from_json(e.at("evidence"), path + ".edges.evidence");
        }
        ts.subgraph = std::move(sg);
      }
      r.subgraphs.push_back(std::move(ts));
    }
  } catch (const nlohmann::json::exception& e) {
    detail::schema_error(e.what(), "$");
  }
  return r;
}

}  // namespace litkg
