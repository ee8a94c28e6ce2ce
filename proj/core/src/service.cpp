// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "litkg/service.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json_codec.hpp"
#include "litkg/export.hpp"
#include "litkg/facets.hpp"
#include "litkg/meta_query.hpp"
#include "litkg/pathrank.hpp"
#include "text_util.hpp"

namespace litkg {

using detail::ordered_json;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read file", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<fs::path> files_with_extension(const fs::path& dir, std::string_view ext) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ext) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

ordered_json bundles_json(const std::vector<ResolvedBundle>& bundles) {
  ordered_json arr = ordered_json::array();
  for (const auto& b : bundles) arr.push_back({{"source", b.source}, {"raw", b.raw}});
  return arr;
}

std::vector<ResolvedBundle> bundles_from_json(const nlohmann::json& arr, const std::string& where) {
  if (!arr.is_array()) throw Error(ErrorCode::ConfigError, "malformed update log entry", where);
  std::vector<ResolvedBundle> out;
  for (const auto& b : arr) {
    out.push_back(resolve_bundle(b.at("source").get<std::string>(), b.at("raw").get<std::string>()));
  }
  return out;
}

ordered_json path_json(const Path& p) {
  ordered_json edges = ordered_json::array();
  for (const auto& e : p.edges) edges.push_back(detail::to_json(e));
  return {{"nodes", p.nodes}, {"edges", std::move(edges)}, {"score", p.score.to_string()},
          {"score_value", p.score.to_double()}};
}

ordered_json subgraph_json(const ScoredSubgraph& sg) {
  ordered_json paths = ordered_json::array();
  for (const auto& p : sg.paths) paths.push_back(path_json(p));
  ordered_json edges = ordered_json::array();
  for (const auto& [key, s] : sg.edge_salience) {
    ordered_json evidence = ordered_json::array();
    for (const auto& r : sg.evidence.at(key)) evidence.push_back(detail::to_json(r));
    edges.push_back({{"edge", detail::to_json(key)}, {"salience", s.to_string()}, {"evidence", std::move(evidence)}});
  }
  return {{"nodes", std::vector<std::string>(sg.nodes.begin(), sg.nodes.end())},
          {"paths", std::move(paths)},
          {"edges", std::move(edges)},
          {"truncated", sg.truncated}};
}

ordered_json sentence_json(const SentenceRecord& s) {
  ordered_json mentions = ordered_json::array();
  for (const auto& m : s.mentions) {
    mentions.push_back({{"char_span", {m.char_span.start, m.char_span.end}},
                        {"entity_id", m.entity_id},
                        {"coarse_type", to_string(m.coarse_type)}});
  }
  return {{"paper_id", s.paper_id},
          {"sentence_idx", s.sentence_idx},
          {"section", to_string(s.section)},
          {"text", s.text},
          {"mentions", std::move(mentions)}};
}

ordered_json entity_json(const EntityRecord& e) {
  return {{"id", e.id},
          {"name", e.name},
          {"coarse_type", to_string(e.coarse_type)},
          {"fine_types", e.fine_types},
          {"aliases", e.aliases}};
}

HttpResponse json_response(const ordered_json& j) { return HttpResponse{200, "application/json", j.dump() + "\n"}; }

[[noreturn]] void bad_param(const std::string& name, const std::string& why) {
  throw Error(ErrorCode::InvalidArgument, why, name);
}

std::string required(const HttpRequest& req, const std::string& name) {
  auto v = req.param(name);
  if (!v || v->empty()) bad_param(name, "missing query parameter");
  return *v;
}

long long int_param(const HttpRequest& req, const std::string& name, long long fallback, long long lo, long long hi) {
  auto v = req.param(name);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const long long n = std::stoll(*v, &used);
    if (used != v->size() || n < lo || n > hi) bad_param(name, "integer out of range");
    return n;
  } catch (const std::logic_error&) {
    bad_param(name, "expected an integer");
  }
}

bool bool_param(const HttpRequest& req, const std::string& name) {
  auto v = req.param(name);
  if (!v) return false;
  if (*v == "true" || *v == "1") return true;
  if (*v == "false" || *v == "0") return false;
  bad_param(name, "expected true or false");
}

ConstraintSet constraints_of(const HttpRequest& req) {
  ConstraintSet cs;
  for (const auto& c : req.params("c")) cs.add_wire(c);
  return cs;
}

PathQuery path_query_of(const HttpRequest& req) {
  PathQuery q;
  q.src = required(req, "src");
  q.dst = required(req, "dst");
  q.max_hops = static_cast<int>(int_param(req, "hops", q.max_hops, 1, 4));
  q.top_k = static_cast<std::size_t>(int_param(req, "top_k", static_cast<long long>(q.top_k), 1, 100000));
  if (auto m = req.param("mode")) {
    auto mode = parse_scoring_mode(*m);
    if (!mode) bad_param("mode", "expected sum, avg or min");
    q.mode = *mode;
  }
  q.directed = bool_param(req, "directed");
  q.min_edge_support = static_cast<std::size_t>(int_param(req, "min_support", 1, 0, 1 << 30));
  return q;
}

nlohmann::json parse_body(const HttpRequest& req) {
  auto j = nlohmann::json::parse(req.body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::SchemaError, "body must be a JSON object", "$");
  return j;
}

std::size_t body_count(const nlohmann::json& body, const char* field, std::size_t fallback) {
  auto it = body.find(field);
  if (it == body.end()) return fallback;
  if (!it->is_number_unsigned() || it->get<std::size_t>() == 0) bad_param(field, "expected a positive integer");
  return it->get<std::size_t>();
}

ordered_json update_summary_json(const UpdateSummary& s) {
  ordered_json errors = ordered_json::array();
  for (const auto& e : s.errors) {
    errors.push_back({{"paper", e.paper}, {"code", to_string(e.code)}, {"message", e.message}});
  }
  return {{"removed", s.removed}, {"updated", s.updated}, {"added", s.added}, {"errors", std::move(errors)}};
}

}  // namespace

DataStore::DataStore(fs::path root) : root_(std::move(root)) {
  if (!fs::is_directory(root_)) throw Error(ErrorCode::ConfigError, "data directory not found", root_.string());
}

std::shared_ptr<const Registry> DataStore::registry() const {
  const auto dir = root_ / "registry";
  auto reg = std::make_shared<Registry>(*Registry::builtin());
  if (fs::exists(dir / "relation_subtypes.txt")) reg->relations = Vocabulary::load(dir / "relation_subtypes.txt");
  if (fs::exists(dir / "event_types.txt")) reg->events = Vocabulary::load(dir / "event_types.txt");
  return reg;
}

std::vector<CtdRow> DataStore::ctd_rows() const {
  std::vector<CtdRow> rows;
  for (const auto& path : files_with_extension(root_ / "ctd", ".tsv")) {
    try {
      auto more = load_ctd_table(path);
      rows.insert(rows.end(), more.begin(), more.end());
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), path.filename().string() + ":" + e.detail());
    }
  }
  return rows;
}

std::vector<FigureLayout> DataStore::figures() const {
  std::vector<FigureLayout> out;
  for (const auto& path : files_with_extension(root_ / "figures", ".json")) {
    try {
      out.push_back(parse_figure_layout(read_file(path)));
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), path.filename().string() + ":" + e.detail());
    }
  }
  return out;
}

ReportTemplates DataStore::templates() const {
  const auto path = root_ / "report_templates.txt";
  return fs::exists(path) ? ReportTemplates::load(path) : ReportTemplates::builtin();
}

KnowledgeBase DataStore::load() const {
  KnowledgeBase kb(registry());
  for (const auto& path : files_with_extension(root_ / "bundles", ".json")) {
    try {
      ingest_bundle(kb, load_document_bundle(path));
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), path.filename().string() + ":" + e.detail());
    }
  }
  const auto log = root_ / "updates.log";
  if (fs::exists(log)) {
    std::istringstream in(read_file(log));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (detail::trim(line).empty()) continue;
      const std::string where = "updates.log:" + std::to_string(line_no);
      ResolvedUpdate update;
      try {
        const auto j = nlohmann::json::parse(line);
        update.added = bundles_from_json(j.at("added"), where);
        update.updated = bundles_from_json(j.at("updated"), where);
        update.removed = j.at("removed").get<std::vector<std::string>>();
      } catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::ConfigError, "malformed update log entry", where);
      }
      apply_update(kb, update);
    }
  }
  link_ctd(kb.graph, ctd_rows());
  return kb;
}

void DataStore::append_update(const ResolvedUpdate& update) const {
  ordered_json j = {{"added", bundles_json(update.added)},
                    {"removed", update.removed},
                    {"updated", bundles_json(update.updated)}};
  std::ofstream out(root_ / "updates.log", std::ios::app | std::ios::binary);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot append to update log", (root_ / "updates.log").string());
  out << j.dump() << '\n';
}

void DataStore::add_ctd_table(const fs::path& table) const {
  load_ctd_table(table);
  fs::create_directories(root_ / "ctd");
  fs::copy_file(table, root_ / "ctd" / table.filename(), fs::copy_options::overwrite_existing);
}

std::optional<std::string> HttpRequest::param(const std::string& name) const {
  auto it = query.find(name);
  if (it == query.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> HttpRequest::params(const std::string& name) const {
  std::vector<std::string> out;
  auto [lo, hi] = query.equal_range(name);
  for (auto it = lo; it != hi; ++it) out.push_back(it->second);
  return out;
}

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownEntity:
    case ErrorCode::UnknownEdge:
    case ErrorCode::NoPathFound:
    case ErrorCode::UnknownSentence:
    case ErrorCode::NotFound:
      return 404;
    case ErrorCode::EmptyQuery:
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnknownFacet:
    case ErrorCode::UnknownFormat:
    case ErrorCode::UnknownPlaceholder:
      return 400;
    case ErrorCode::MalformedId:
    case ErrorCode::UnknownSubtype:
    case ErrorCode::EmptyProvenance:
    case ErrorCode::SchemaError:
    case ErrorCode::SpanOutOfRange:
    case ErrorCode::NonDenseSentenceIndex:
    case ErrorCode::EmptyIdentifier:
    case ErrorCode::DuplicatePaper:
    case ErrorCode::MalformedRow:
    case ErrorCode::OverlappingLists:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::InvalidLayout:
      return 422;
    case ErrorCode::ConfigError:
    case ErrorCode::Internal:
      return 500;
  }
  return 500;
}

HttpResponse error_response(const Error& e) {
  ordered_json err = {{"code", to_string(e.code())}, {"message", e.what()}};
  if (!e.detail().empty()) err["detail"] = e.detail();
  return HttpResponse{http_status(e.code()), "application/json", ordered_json{{"error", err}}.dump() + "\n"};
}

std::optional<Error> error_from_response(const HttpResponse& response) {
  const auto j = nlohmann::json::parse(response.body, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("error")) return std::nullopt;
  const auto& err = j["error"];
  if (!err.is_object() || !err.contains("code") || !err["code"].is_string()) return std::nullopt;
  const auto code = parse_error_code(err["code"].get<std::string>());
  if (!code) return std::nullopt;
  return Error(*code, err.value("message", std::string()), err.value("detail", std::string()));
}

std::string stats_json(const GraphStats& s) {
  return ordered_json{{"diseases", s.diseases},
                      {"chemicals", s.chemicals},
                      {"genes", s.genes},
                      {"organisms", s.organisms},
                      {"chemical_gene_links", s.chemical_gene_links},
                      {"chemical_disease_links", s.chemical_disease_links},
                      {"gene_disease_links", s.gene_disease_links},
                      {"other_links", s.other_links},
                      {"events", s.events},
                      {"papers", s.papers}}
             .dump() +
         "\n";
}

Service::Service(KnowledgeBase initial, ServiceOptions options)
    : repo_(std::move(initial)), options_(std::move(options)) {
  if (!options_.provider) options_.provider = std::make_shared<HashingEmbeddingProvider>();
}

std::unique_ptr<Service> Service::from_data_dir(const fs::path& dir) {
  DataStore store(dir);
  ServiceOptions options;
  options.templates = store.templates();
  options.ctd_rows = store.ctd_rows();
  options.figures = store.figures();
  options.store = store;
  return std::make_unique<Service>(store.load(), std::move(options));
}

UpdateSummary Service::apply(const ResolvedUpdate& update) const {
  return repo_.write([&](KnowledgeBase& kb) {
    auto summary = apply_update(kb, update);
    relink_ctd(kb.graph, options_.ctd_rows);
    if (options_.store) options_.store->append_update(update);
    return summary;
  });
}

HttpResponse Service::handle(const HttpRequest& request) const {
  const auto snap = repo_.snapshot();
  try {
    return route(request, snap);
  } catch (const Error& e) {
    return error_response(e);
  } catch (const std::exception& e) {
    return error_response(Error(ErrorCode::Internal, e.what()));
  }
}

HttpResponse Service::route(const HttpRequest& req, const Snapshot& snap) const {
  const auto& graph = snap->graph;
  const auto& corpus = snap->corpus;
  const bool get = req.method == "GET";
  const bool post = req.method == "POST";
  auto method_guard = [&](bool ok) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, "method not allowed", req.method + " " + req.path);
  };

  if (req.path == "/stats") {
    method_guard(get);
    return HttpResponse{200, "application/json", stats_json(snap->stats())};
  }

  if (req.path == "/entities") {
    method_guard(get);
    const auto q = req.param("q").value_or("");
    const auto limit = static_cast<std::size_t>(int_param(req, "limit", 50, 1, 100000));
    ordered_json out = ordered_json::array();
    for (const auto* e : graph.live_entities()) {
      bool hit = q.empty() || detail::icontains(e->id, q) || detail::icontains(e->name, q) ||
                 std::any_of(e->aliases.begin(), e->aliases.end(), [&](const auto& a) { return detail::icontains(a, q); });
      if (!hit) continue;
      out.push_back(entity_json(*e));
      if (out.size() >= limit) break;
    }
    return json_response(ordered_json{{"entities", std::move(out)}});
  }

  if (req.path == "/paths") {
    method_guard(get);
    const auto q = path_query_of(req);
    auto found = enumerate_paths(graph, q);
    for (auto& p : found.paths) p.score = score_path(graph, p, q.mode);
    ordered_json paths = ordered_json::array();
    for (const auto& p : rank_paths(std::move(found.paths), q.top_k)) paths.push_back(path_json(p));
    return json_response(ordered_json{{"paths", std::move(paths)}, {"truncated", found.truncated}});
  }

  if (req.path == "/subgraph") {
    method_guard(get);
    const auto sg = connection_subgraph(graph, path_query_of(req));
    const auto format = req.param("format").value_or("json");
    if (format == "json") return json_response(subgraph_json(sg));
    const auto f = parse_export_format(format);
    return HttpResponse{200, f == ExportFormat::Dot ? "text/vnd.graphviz" : "application/x-ndjson",
                        export_graph(graph, f, sg)};
  }

  if (req.path == "/export") {
    method_guard(get);
    const auto f = parse_export_format(req.param("format").value_or("canonical"));
    return HttpResponse{200, f == ExportFormat::Dot ? "text/vnd.graphviz" : "application/x-ndjson",
                        export_graph(graph, f)};
  }

  if (req.path == "/evidence") {
    method_guard(post);
    const auto body = parse_body(req);
    if (!body.contains("query") || !body["query"].is_string()) throw Error(ErrorCode::EmptyQuery, "query is required");
    std::optional<std::vector<SentenceRef>> candidates;
    if (auto it = body.find("candidates"); it != body.end()) {
      candidates.emplace();
      for (const auto& c : *it) {
        candidates->push_back(SentenceRef{detail::require_string(c, "paper_id", "$.candidates"),
                                          detail::require_index(c, "sentence_idx", "$.candidates")});
      }
    }
    const auto hits = rank_evidence(*options_.provider, corpus, body["query"].get<std::string>(), candidates,
                                    body_count(body, "top_n", 10), &cache_);
    ordered_json out = ordered_json::array();
    for (const auto& h : hits) {
      auto j = sentence_json(h.sentence);
      j["similarity"] = h.similarity;
      out.push_back(std::move(j));
    }
    return json_response(ordered_json{{"provider", options_.provider->name()}, {"hits", std::move(out)}});
  }

  if (req.path == "/metaquery") {
    method_guard(post);
    const auto body = parse_body(req);
    if (!body.contains("pattern") || !body["pattern"].is_string()) {
      throw Error(ErrorCode::EmptyQuery, "pattern is required");
    }
    const auto mq = parse_meta_query(body["pattern"].get<std::string>());
    ordered_json out = ordered_json::array();
    for (const auto& m : match_meta_query(corpus, mq, body_count(body, "top_n", 10))) {
      auto j = sentence_json(m.sentence);
      j["matched_tokens"] = m.matched_tokens;
      j["span"] = m.span;
      out.push_back(std::move(j));
    }
    return json_response(ordered_json{{"matches", std::move(out)}});
  }

  if (req.path == "/facets") {
    method_guard(get);
    const auto facet = parse_facet(required(req, "kind"));
    const auto limit = static_cast<std::size_t>(int_param(req, "limit", 0, 0, 1 << 30));
    const auto counts = facet_counts(graph, constraints_of(req), facet, limit);
    ordered_json entries = ordered_json::array();
    for (const auto& e : counts.entries) entries.push_back({{"term", e.term}, {"count", e.count}});
    return json_response(ordered_json{{"kind", to_string(facet)}, {"entries", std::move(entries)}});
  }

  if (req.path == "/heatmap") {
    method_guard(get);
    const auto m = heatmap(graph, constraints_of(req), required(req, "row"), required(req, "col"));
    ordered_json cells = ordered_json::array();
    for (const auto& [rc, cell] : m.cells) {
      cells.push_back({{"row", rc.first},
                       {"col", rc.second},
                       {"action", action_symbol(cell.action)},
                       {"support", cell.support}});
    }
    return json_response(ordered_json{{"rows", m.rows}, {"cols", m.cols}, {"cells", std::move(cells)}});
  }

  if (req.path.rfind("/report/", 0) == 0) {
    method_guard(get);
    ReportRequest rr;
    rr.drug = req.path.substr(std::string_view("/report/").size());
    for (const auto& t : req.params("targets")) {
      for (auto& id : detail::split_list(t, ',')) rr.targets.push_back(std::move(id));
    }
    rr.max_hops = static_cast<int>(int_param(req, "hops", rr.max_hops, 1, 4));
    rr.top_k = static_cast<std::size_t>(int_param(req, "top_k", static_cast<long long>(rr.top_k), 1, 100000));
    if (auto m = req.param("mode")) {
      auto mode = parse_scoring_mode(*m);
      if (!mode) bad_param("mode", "expected sum, avg or min");
      rr.mode = *mode;
    }
    rr.as_of = req.param("as_of");
    const auto format = parse_report_format(req.param("format").value_or("structured"));
    if (!format) throw Error(ErrorCode::UnknownFormat, "unknown report format", req.param("format").value_or(""));
    const auto report = generate_report(*snap, rr, options_.templates, options_.figures);
    return HttpResponse{200, *format == ReportFormat::Markdown ? "text/markdown" : "application/json",
                        render_report(report, *format)};
  }

  if (req.path == "/admin/update") {
    method_guard(post);
    const auto manifest = parse_update_manifest(req.body);
    const fs::path base = options_.store ? options_.store->root() : fs::current_path();
    const auto summary = apply(resolve_manifest(manifest, base));
    return json_response(update_summary_json(summary));
  }

  throw Error(ErrorCode::NotFound, "no such endpoint", req.path);
}

}  // namespace litkg
