// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace litkg {

struct Box {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  double area() const noexcept { return (x1 - x0) * (y1 - y0); }
  bool valid() const noexcept { return x0 < x1 && y0 < y1; }
  // Closed intervals: touching boxes intersect.
  bool intersects(const Box& o) const noexcept { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
  // Interiors share positive area.
  bool overlaps(const Box& o) const noexcept { return x0 < o.x1 && o.x0 < x1 && y0 < o.y1 && o.y0 < y1; }
  bool operator==(const Box&) const = default;
};

Box hull(std::span<const Box> boxes);

// Squared edge-to-edge distance; 0 when the boxes intersect.
double edge_distance_sq(const Box& a, const Box& b) noexcept;

struct TextBox {
  Box box;
  std::string text;
  bool operator==(const TextBox&) const = default;
};

struct Marker {
  char letter = 'A';
  TextBox box;
};

struct MarkerDetection {
  std::vector<Marker> markers;  // one per letter, ordered by letter
  std::vector<TextBox> labels;  // input order
};

/// `X`, `(X)`, `X)` or `X.` with X a Latin letter is a marker; for repeated
/// letters the smallest box is kept and the others become labels.
std::optional<char> marker_letter(std::string_view text);
MarkerDetection detect_markers(std::span<const TextBox> text_boxes);

/// Region indices per owning marker letter; std::nullopt is the anonymous
/// group used when there are no markers. Every marker has an entry.
/// Errors: InvalidLayout when regions overlap or are degenerate.
using MarkerAssignment = std::map<std::optional<char>, std::vector<std::size_t>>;
MarkerAssignment assign_markers(std::span<const Marker> markers, std::span<const Box> regions);

struct Grounding {
  std::string figure_id;
  std::optional<char> marker;
  std::string entity_id;
  bool operator==(const Grounding&) const = default;
};

struct SubfigureRecord {
  std::optional<char> marker;
  Box bbox;
  std::vector<std::size_t> region_indices;
  std::vector<Box> regions;
  std::vector<TextBox> labels;
  std::optional<std::string> subcaption;
  std::vector<Grounding> groundings;
};

/// One record per non-empty group, hull as bbox, labels intersecting it;
/// ordered by marker letter then (y0, x0).
std::vector<SubfigureRecord> merge_regions(const MarkerAssignment& assignment, std::span<const Box> regions,
                                           std::span<const TextBox> labels = {});

struct CaptionFragment {
  char letter = 'A';
  std::string marker;  // the marker token as written
  std::string text;
};

struct CaptionSplit {
  std::string preamble;
  std::vector<CaptionFragment> fragments;  // strictly ascending letters, starting at A

  // Letter -> subcaption, with "*" for a non-empty preamble (or the whole
  // caption when there are no markers).
  std::map<std::string, std::string> as_map() const;
  // preamble + markers + fragments, space-joined.
  std::string reconstruct() const;
};

CaptionSplit split_caption(std::string_view caption);

struct AlignResult {
  std::vector<SubfigureRecord> records;
  std::vector<char> leftovers;  // subcaption letters with no subfigure
};

/// Fills subcaptions by letter (the preamble otherwise) and grounds labels
/// whose text exactly matches an entity alias.
AlignResult align(std::vector<SubfigureRecord> records, const CaptionSplit& caption, std::string_view figure_id = {},
                  const std::map<std::string, std::vector<std::string>>* alias_index = nullptr);

struct FigureLayout {
  std::string figure_id;
  std::string paper_id;
  double width = 0;
  double height = 0;
  std::vector<Box> regions;
  std::vector<TextBox> text_boxes;
  std::string caption;
};

/// Errors: SchemaError for malformed JSON, InvalidLayout for bad geometry.
FigureLayout parse_figure_layout(std::string_view json);

/// detect_markers, assign_markers, merge_regions and align in sequence.
AlignResult process_figure(const FigureLayout& layout,
                           const std::map<std::string, std::vector<std::string>>* alias_index = nullptr);

std::string subfigures_to_json(const std::vector<SubfigureRecord>& records, int indent = 2);

}  // namespace litkg
