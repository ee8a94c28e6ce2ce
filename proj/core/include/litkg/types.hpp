// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>

namespace litkg {

enum class CoarseType : std::uint8_t { Gene, Disease, Chemical, Organism };

enum class Category : std::uint8_t {
  GeneChemical,
  ChemicalDisease,
  GeneDisease,
  ChemicalGO,
  ChemicalPathway,
  Event,
};

enum class Action : std::uint8_t { Increase, Decrease, Affect };

enum class Section : std::uint8_t { Title, Abstract, Body, Caption, Acknowledgements };

std::string_view to_string(CoarseType t) noexcept;
std::string_view to_string(Category c) noexcept;
std::string_view to_string(Action a) noexcept;
std::string_view to_string(Section s) noexcept;

std::optional<CoarseType> parse_coarse_type(std::string_view text) noexcept;
std::optional<Category> parse_category(std::string_view text) noexcept;
std::optional<Action> parse_action(std::string_view text) noexcept;
std::optional<Section> parse_section(std::string_view text) noexcept;

// "++", "--" or the UTF-8 right arrow.
std::string_view action_symbol(Action a) noexcept;

/// Half-open byte range [start, end) into a UTF-8 sentence.
struct CharSpan {
  std::uint32_t start = 0;
  std::uint32_t end = 0;

  std::uint32_t length() const noexcept { return end - start; }
  bool overlaps(const CharSpan& o) const noexcept { return start < o.end && o.start < end; }
  auto operator<=>(const CharSpan&) const = default;
};

}  // namespace litkg
