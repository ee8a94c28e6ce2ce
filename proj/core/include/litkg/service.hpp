// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "litkg/embedding.hpp"
#include "litkg/error.hpp"
#include "litkg/evidence.hpp"
#include "litkg/figure_layout.hpp"
#include "litkg/ingest.hpp"
#include "litkg/knowledge_base.hpp"
#include "litkg/report.hpp"

namespace litkg {

/// On-disk layout:
///   registry/relation_subtypes.txt, registry/event_types.txt  (optional)
///   bundles/*.json          base corpus, ingested in file-name order
///   updates.log             one JSON update per line, replayed in order
///   ctd/*.tsv               curated rows, linked after replay
///   figures/*.json          figure layouts
///   report_templates.txt    (optional)
class DataStore {
 public:
  explicit DataStore(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }
  std::shared_ptr<const Registry> registry() const;
  std::vector<CtdRow> ctd_rows() const;
  std::vector<FigureLayout> figures() const;
  ReportTemplates templates() const;

  /// Bundles, then the update log, then curated links.
  KnowledgeBase load() const;

  void append_update(const ResolvedUpdate& update) const;
  void add_ctd_table(const std::filesystem::path& table) const;

 private:
  std::filesystem::path root_;
};

struct HttpRequest {
  std::string method = "GET";
  std::string path;
  std::multimap<std::string, std::string> query;
  std::string body;

  std::optional<std::string> param(const std::string& name) const;
  std::vector<std::string> params(const std::string& name) const;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

int http_status(ErrorCode code) noexcept;
/// `{"error":{"code","message","detail"?}}`
HttpResponse error_response(const Error& e);
/// Inverse of error_response; nullopt when the body is not an envelope.
std::optional<Error> error_from_response(const HttpResponse& response);

std::string stats_json(const GraphStats& stats);

struct ServiceOptions {
  std::shared_ptr<const EmbeddingProvider> provider;  // default: hashing
  ReportTemplates templates = ReportTemplates::builtin();
  std::vector<CtdRow> ctd_rows;
  std::vector<FigureLayout> figures;
  std::optional<DataStore> store;  // receives applied updates
};

/// Request handling over snapshots; updates go through the repository's
/// single writer. handle() is safe to call concurrently.
class Service {
 public:
  Service(KnowledgeBase initial, ServiceOptions options);
  static std::unique_ptr<Service> from_data_dir(const std::filesystem::path& dir);

  HttpResponse handle(const HttpRequest& request) const;

  Snapshot snapshot() const { return repo_.snapshot(); }
  UpdateSummary apply(const ResolvedUpdate& update) const;

 private:
  HttpResponse route(const HttpRequest& request, const Snapshot& snap) const;

  mutable Repository repo_;
  ServiceOptions options_;
  mutable ContextVectorCache cache_;
};

}  // namespace litkg
