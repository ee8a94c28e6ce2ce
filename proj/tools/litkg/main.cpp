// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include <CLI11.hpp>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "http_server.hpp"
#include "litkg/ingest.hpp"
#include "litkg/report.hpp"
#include "litkg/service.hpp"

namespace fs = std::filesystem;
using namespace litkg;

namespace {

int emit(const HttpResponse& resp) {
  if (resp.status >= 400) {
    std::cerr << resp.body;
    return 1;
  }
  std::cout << resp.body;
  return 0;
}

int print_update(const UpdateSummary& s) {
  nlohmann::ordered_json errors = nlohmann::ordered_json::array();
  for (const auto& e : s.errors) {
    errors.push_back({{"paper", e.paper}, {"code", std::string(to_string(e.code))}, {"message", e.message}});
  }
  nlohmann::ordered_json out = {
      {"removed", s.removed}, {"updated", s.updated}, {"added", s.added}, {"errors", errors}};
  std::cout << out.dump(2) << "\n";
  return s.errors.empty() ? 0 : 2;
}

HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"litkg: literature knowledge graph engine"};
  app.require_subcommand(1);
  std::string data_dir = ".";
  app.add_option("--data-dir", data_dir, "Data directory")->check(CLI::ExistingDirectory);

  auto* ingest = app.add_subcommand("ingest", "Ingest document bundles into the data directory");
  std::vector<std::string> bundle_paths;
  ingest->add_option("bundles", bundle_paths, "Bundle JSON files")->required()->check(CLI::ExistingFile);

  auto* ctd = app.add_subcommand("ctd", "Register a curated relation table and link it");
  std::string ctd_path;
  ctd->add_option("table", ctd_path, "Tab-separated table")->required()->check(CLI::ExistingFile);

  auto* update = app.add_subcommand("update", "Apply an update manifest");
  std::string manifest_path;
  update->add_option("manifest", manifest_path, "Manifest JSON")->required()->check(CLI::ExistingFile);

  app.add_subcommand("stats", "Print graph statistics");

  auto* paths = app.add_subcommand("paths", "Rank paths between two entities");
  std::string src, dst, mode = "avg";
  int hops = 3, top_k = 20;
  bool directed = false;
  paths->add_option("--src", src)->required();
  paths->add_option("--dst", dst)->required();
  paths->add_option("--hops", hops)->check(CLI::Range(1, 4));
  paths->add_option("--top-k", top_k)->check(CLI::PositiveNumber);
  paths->add_option("--mode", mode)->check(CLI::IsMember({"sum", "avg", "min"}));
  paths->add_flag("--directed", directed);
  bool subgraph = false;
  paths->add_flag("--subgraph", subgraph, "Print the connection subgraph with edge salience");

  auto* evidence = app.add_subcommand("evidence", "Rank evidence sentences for a query");
  std::string query;
  int top_n = 10;
  evidence->add_option("--query", query)->required();
  evidence->add_option("--top-n", top_n)->check(CLI::PositiveNumber);

  auto* metaquery = app.add_subcommand("metaquery", "Match a typed pattern against the corpus");
  std::string pattern;
  metaquery->add_option("pattern", pattern)->required();
  metaquery->add_option("--top-n", top_n)->check(CLI::PositiveNumber);

  auto* report = app.add_subcommand("report", "Write the drug report");
  std::string drug, out_dir = ".", as_of;
  std::vector<std::string> targets;
  report->add_option("--drug", drug)->required();
  report->add_option("--targets", targets)->required()->delimiter(',');
  report->add_option("--out", out_dir);
  report->add_option("--as-of", as_of, "Timestamp recorded in the report");
  report->add_option("--hops", hops)->check(CLI::Range(1, 4));
  std::size_t report_top_k = ReportRequest{}.top_k;
  report->add_option("--top-k", report_top_k)->check(CLI::PositiveNumber);
  report->add_option("--mode", mode)->check(CLI::IsMember({"sum", "avg", "min"}));

  auto* exporter = app.add_subcommand("export", "Export the graph");
  std::string format = "canonical";
  exporter->add_option("--format", format)->check(CLI::IsMember({"canonical", "dot", "graph-description"}));

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  std::string addr = "127.0.0.1:8080", ui_dir;
  serve->add_option("--addr", addr, "host:port");
  serve->add_option("--ui", ui_dir, "Static files served under /ui/")->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      DataStore store(data_dir);
      auto kb = store.load();
      ResolvedUpdate up;
      for (const auto& p : bundle_paths) {
        std::ifstream in(p, std::ios::binary);
        std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        up.added.push_back(resolve_bundle(p, std::move(raw)));
      }
      auto summary = apply_update(kb, up);
      if (!summary.added.empty()) {
        std::erase_if(up.added, [&](const ResolvedBundle& b) {
          return !b.bundle || std::find(summary.added.begin(), summary.added.end(), b.bundle->paper_id) ==
                                  summary.added.end();
        });
        store.append_update(up);
      }
      return print_update(summary);
    }
    if (*ctd) {
      DataStore store(data_dir);
      store.add_ctd_table(ctd_path);
      auto kb = store.load();
      auto rows = load_ctd_table(ctd_path);
      const auto linked = relink_ctd(kb.graph, rows);
      std::cout << nlohmann::ordered_json{{"rows", rows.size()}, {"linked", linked.added}, {"skipped", linked.skipped}}
                       .dump(2)
                << "\n";
      return 0;
    }
    if (*update) {
      DataStore store(data_dir);
      auto kb = store.load();
      const auto manifest = load_update_manifest(manifest_path);
      const auto resolved = resolve_manifest(manifest, fs::path(manifest_path).parent_path());
      auto summary = apply_update(kb, resolved);
      store.append_update(resolved);
      return print_update(summary);
    }

    auto service = Service::from_data_dir(data_dir);
    HttpRequest req;
    if (app.got_subcommand("stats")) {
      req.path = "/stats";
    } else if (*paths) {
      req.path = subgraph ? "/subgraph" : "/paths";
      req.query = {{"src", src}, {"dst", dst}, {"hops", std::to_string(hops)},
                   {"top_k", std::to_string(top_k)}, {"mode", mode}, {"directed", directed ? "true" : "false"}};
    } else if (*evidence) {
      req.method = "POST";
      req.path = "/evidence";
      req.body = nlohmann::json{{"query", query}, {"top_n", top_n}}.dump();
    } else if (*metaquery) {
      req.method = "POST";
      req.path = "/metaquery";
      req.body = nlohmann::json{{"pattern", pattern}, {"top_n", top_n}}.dump();
    } else if (*exporter) {
      req.path = "/export";
      req.query = {{"format", format}};
    } else if (*report) {
      ReportRequest rr;
      rr.drug = drug;
      rr.targets = targets;
      rr.max_hops = hops;
      rr.top_k = report_top_k;
      rr.mode = *parse_scoring_mode(mode);
      if (!as_of.empty()) rr.as_of = as_of;
      DataStore store(data_dir);
      const auto result = generate_report(*service->snapshot(), rr, store.templates(), store.figures());
      fs::create_directories(out_dir);
      for (auto [fmt, ext] : {std::pair{ReportFormat::Structured, ".report.json"},
                              std::pair{ReportFormat::Markdown, ".report.md"}}) {
        const auto path = fs::path(out_dir) / (drug + ext);
        std::ofstream(path, std::ios::binary) << render_report(result, fmt);
        std::cout << path.string() << "\n";
      }
      return 0;
    } else if (*serve) {
      const auto colon = addr.rfind(':');
      if (colon == std::string::npos) throw Error(ErrorCode::ConfigError, "--addr must be host:port", addr);
      HttpServer server(*service, ui_dir.empty() ? std::nullopt : std::optional<fs::path>(ui_dir));
      if (!server.bind(addr.substr(0, colon), std::stoi(addr.substr(colon + 1)))) {
        throw Error(ErrorCode::ConfigError, "cannot bind", addr);
      }
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "listening on " << addr << "\n";
      server.listen_after_bind();
      return 0;
    }
    return emit(service->handle(req));
  } catch (const Error& e) {
    std::cerr << error_response(e).body;
    return 1;
  }
}
