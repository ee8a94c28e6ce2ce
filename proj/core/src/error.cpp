// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "litkg/error.hpp"

#include <array>
#include <utility>

namespace litkg {
namespace {

constexpr std::array<std::pair<ErrorCode, std::string_view>, 24> kNames{{
    {ErrorCode::MalformedId, "MalformedId"},
    {ErrorCode::UnknownEntity, "UnknownEntity"},
    {ErrorCode::UnknownSubtype, "UnknownSubtype"},
    {ErrorCode::EmptyProvenance, "EmptyProvenance"},
    {ErrorCode::UnknownEdge, "UnknownEdge"},
    {ErrorCode::SchemaError, "SchemaError"},
    {ErrorCode::SpanOutOfRange, "SpanOutOfRange"},
    {ErrorCode::NonDenseSentenceIndex, "NonDenseSentenceIndex"},
    {ErrorCode::EmptyIdentifier, "EmptyIdentifier"},
    {ErrorCode::DuplicatePaper, "DuplicatePaper"},
    {ErrorCode::MalformedRow, "MalformedRow"},
    {ErrorCode::OverlappingLists, "OverlappingLists"},
    {ErrorCode::BudgetExceeded, "BudgetExceeded"},
    {ErrorCode::NoPathFound, "NoPathFound"},
    {ErrorCode::UnknownSentence, "UnknownSentence"},
    {ErrorCode::EmptyQuery, "EmptyQuery"},
    {ErrorCode::UnknownPlaceholder, "UnknownPlaceholder"},
    {ErrorCode::UnknownFacet, "UnknownFacet"},
    {ErrorCode::UnknownFormat, "UnknownFormat"},
    {ErrorCode::InvalidArgument, "InvalidArgument"},
    {ErrorCode::InvalidLayout, "InvalidLayout"},
    {ErrorCode::ConfigError, "ConfigError"},
    {ErrorCode::NotFound, "NotFound"},
    {ErrorCode::Internal, "Internal"},
}};

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "Internal";
}

std::optional<ErrorCode> parse_error_code(std::string_view text) noexcept {
  for (const auto& [c, name] : kNames) {
    if (name == text) return c;
  }
  return std::nullopt;
}

}  // namespace litkg
