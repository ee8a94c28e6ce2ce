// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "litkg/figure_layout.hpp"
#include "litkg/knowledge_base.hpp"
#include "litkg/pathrank.hpp"

namespace litkg {

inline constexpr std::size_t kQuestionCount = 11;
inline constexpr std::string_view kDrugPlaceholder = "DRUGNAME";

// Question texts, numbered from 1 (index 0 unused).
const std::array<std::string_view, kQuestionCount + 1>& report_questions();

/// Per-question routing: meta-query patterns and relation subtype sets.
/// Grammar: `[qN]` headers, `query = "..."` and `subtypes = a,b,c` lines,
/// `#` comments. Errors: ConfigError (detail = line number).
struct ReportTemplates {
  std::map<int, std::vector<std::string>> queries;
  std::map<int, std::set<std::string>> subtypes;

  static ReportTemplates parse(std::string_view text);
  static ReportTemplates load(const std::filesystem::path& path);
  static const ReportTemplates& builtin();

  const std::set<std::string>& therapeutic() const;
  const std::set<std::string>& toxicity() const;
};

// Case-insensitive substrings marking a funding statement.
const std::vector<std::string>& funding_lexicon();

struct ReportRequest {
  std::string drug;
  std::vector<std::string> targets;
  int max_hops = 3;
  std::size_t top_k = 5;
  ScoringMode mode = ScoringMode::AvgSupport;
  std::size_t evidence_per_answer = 5;
  std::optional<std::string> as_of;  // default: latest pub_date in the corpus
};

enum class AnswerKind { KgFact, EvidenceSentence, MetadataFact, SubgraphRef, NotFound };

std::string to_string(AnswerKind kind);
std::optional<AnswerKind> parse_answer_kind(std::string_view s);

struct AnswerItem {
  AnswerKind kind = AnswerKind::NotFound;
  std::string text;
  std::vector<ProvenanceRef> evidence;
  std::string query;  // NotFound: what was searched
  bool operator==(const AnswerItem&) const = default;
};

struct QuestionAnswer {
  int number = 0;
  std::string question;
  std::vector<AnswerItem> items;
  std::vector<ProvenanceRef> evidence;  // union over items, sorted
  bool operator==(const QuestionAnswer&) const = default;
};

struct TargetSubgraph {
  std::string target;
  std::optional<ScoredSubgraph> subgraph;  // empty when no path exists
};

struct DrugReport {
  ReportRequest request;
  std::string generated;
  std::string drug_name;
  std::vector<QuestionAnswer> answers;  // exactly 11, numbered 1..11
  std::vector<TargetSubgraph> subgraphs;  // ordered by target id
};

/// Errors: UnknownEntity (drug or target), InvalidArgument (no targets).
DrugReport generate_report(const KnowledgeBase& kb, const ReportRequest& request,
                           const ReportTemplates& templates = ReportTemplates::builtin(),
                           std::span<const FigureLayout> figures = {});

enum class MetadataQuestion { Affiliations, Sources };

/// Affiliations: sorted distinct affiliations of papers mentioning the drug.
/// Sources: papers by descending count of facts they support, then id; facts
/// are the items of `answered` when given, else the drug's incident edges.
/// Errors: UnknownEntity.
QuestionAnswer answer_metadata_question(const KnowledgeBase& kb, std::string_view drug, MetadataQuestion which,
                                        std::span<const QuestionAnswer> answered = {});

enum class ReportFormat { Structured, Markdown };

std::optional<ReportFormat> parse_report_format(std::string_view s);
std::string render_report(const DrugReport& report, ReportFormat format);

/// Inverse of the structured rendering. Errors: SchemaError.
DrugReport report_from_json(std::string_view json);

}  // namespace litkg
