// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace litkg {

/// Stable error codes. The string form of each code is part of the wire
/// contract (HTTP error envelope, CLI diagnostics) and must not change.
enum class ErrorCode {
  MalformedId,
  UnknownEntity,
  UnknownSubtype,
  EmptyProvenance,
  UnknownEdge,
  SchemaError,
  SpanOutOfRange,
  NonDenseSentenceIndex,
  EmptyIdentifier,
  DuplicatePaper,
  MalformedRow,
  OverlappingLists,
  BudgetExceeded,
  NoPathFound,
  UnknownSentence,
  EmptyQuery,
  UnknownPlaceholder,
  UnknownFacet,
  UnknownFormat,
  InvalidArgument,
  InvalidLayout,
  ConfigError,
  NotFound,
  Internal,
};

std::string_view to_string(ErrorCode code) noexcept;
std::optional<ErrorCode> parse_error_code(std::string_view text) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string detail = {})
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  // Offending field path, line number or identifier; may be empty.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace litkg
