// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "litkg/types.hpp"

#include <array>
#include <utility>

namespace litkg {
namespace {

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E value) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return {};
}

template <typename E, std::size_t N>
std::optional<E> value_of(const std::array<std::pair<E, std::string_view>, N>& table,
                          std::string_view text) {
  for (const auto& [v, name] : table) {
    if (name == text) return v;
  }
  return std::nullopt;
}

constexpr std::array<std::pair<CoarseType, std::string_view>, 4> kCoarse{{
    {CoarseType::Gene, "Gene"},
    {CoarseType::Disease, "Disease"},
    {CoarseType::Chemical, "Chemical"},
    {CoarseType::Organism, "Organism"},
}};

constexpr std::array<std::pair<Category, std::string_view>, 6> kCategory{{
    {Category::GeneChemical, "GeneChemical"},
    {Category::ChemicalDisease, "ChemicalDisease"},
    {Category::GeneDisease, "GeneDisease"},
    {Category::ChemicalGO, "ChemicalGO"},
    {Category::ChemicalPathway, "ChemicalPathway"},
    {Category::Event, "Event"},
}};

constexpr std::array<std::pair<Action, std::string_view>, 3> kAction{{
    {Action::Increase, "Increase"},
    {Action::Decrease, "Decrease"},
    {Action::Affect, "Affect"},
}};

constexpr std::array<std::pair<Section, std::string_view>, 5> kSection{{
    {Section::Title, "Title"},
    {Section::Abstract, "Abstract"},
    {Section::Body, "Body"},
    {Section::Caption, "Caption"},
    {Section::Acknowledgements, "Acknowledgements"},
}};

}  // namespace

std::string_view to_string(CoarseType t) noexcept { return name_of(kCoarse, t); }
std::string_view to_string(Category c) noexcept { return name_of(kCategory, c); }
std::string_view to_string(Action a) noexcept { return name_of(kAction, a); }
std::string_view to_string(Section s) noexcept { return name_of(kSection, s); }

std::optional<CoarseType> parse_coarse_type(std::string_view text) noexcept {
  return value_of(kCoarse, text);
}
std::optional<Category> parse_category(std::string_view text) noexcept {
  return value_of(kCategory, text);
}
std::optional<Action> parse_action(std::string_view text) noexcept {
  return value_of(kAction, text);
}
std::optional<Section> parse_section(std::string_view text) noexcept {
  return value_of(kSection, text);
}

std::string_view action_symbol(Action a) noexcept {
  switch (a) {
    case Action::Increase:
      return "++";
    case Action::Decrease:
      return "--";
    case Action::Affect:
      return "\xE2\x86\x92";
  }
  return {};
}

}  // namespace litkg
