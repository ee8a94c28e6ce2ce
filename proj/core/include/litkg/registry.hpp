// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace litkg {

/// A closed vocabulary read from a plain-text file: one entry per line,
/// `#` starts a comment, blank lines ignored, surrounding whitespace trimmed.
class Vocabulary {
 public:
  Vocabulary() = default;

  static Vocabulary parse(std::string_view text);
  static Vocabulary load(const std::filesystem::path& path);

  bool contains(std::string_view entry) const { return entries_.find(entry) != entries_.end(); }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::set<std::string, std::less<>>& entries() const noexcept { return entries_; }

 private:
  std::set<std::string, std::less<>> entries_;
};

/// Relation subtypes and event types accepted by a graph.
struct Registry {
  Vocabulary relations;
  Vocabulary events;

  bool accepts(bool is_event, std::string_view subtype) const {
    return is_event ? events.contains(subtype) : relations.contains(subtype);
  }

  // The 133 relation subtypes and 13 event types shipped with the library.
  static std::shared_ptr<const Registry> builtin();
};

// Shipped text resources.
std::string_view builtin_relation_subtypes_text() noexcept;
std::string_view builtin_event_types_text() noexcept;
std::string_view builtin_fine_types_text() noexcept;
std::string_view builtin_report_templates_text() noexcept;

}  // namespace litkg
