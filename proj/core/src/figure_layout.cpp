// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "litkg/figure_layout.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

#include "litkg/error.hpp"
#include "text_util.hpp"

namespace litkg {

namespace {

bool is_letter(char c) { return detail::is_ascii_upper(c) || detail::is_ascii_lower(c); }

bool boundary_after(std::string_view s, std::size_t pos) { return pos >= s.size() || detail::is_space(s[pos]); }

// True when `pos` starts the caption or follows ". " / "; ".
bool fragment_start(std::string_view s, std::size_t pos) {
  std::size_t j = pos;
  while (j > 0 && detail::is_space(s[j - 1])) --j;
  if (j == 0) return true;
  return j < pos && (s[j - 1] == '.' || s[j - 1] == ';');
}

struct MarkerToken {
  std::size_t pos;
  std::size_t len;
  char letter;
};

std::optional<MarkerToken> marker_at(std::string_view s, std::size_t i) {
  if (s[i] == '(' && i + 2 < s.size() && is_letter(s[i + 1]) && s[i + 2] == ')' &&
      (i == 0 || detail::is_space(s[i - 1])) && boundary_after(s, i + 3)) {
    return MarkerToken{i, 3, detail::to_upper(s[i + 1])};
  }
  if (is_letter(s[i]) && i + 1 < s.size() && (s[i + 1] == ')' || s[i + 1] == '.') && boundary_after(s, i + 2) &&
      fragment_start(s, i)) {
    return MarkerToken{i, 2, detail::to_upper(s[i])};
  }
  return std::nullopt;
}

Box parse_box(const nlohmann::json& j, const std::string& path) {
  Box b;
  try {
    b = Box{j.at("x0").get<double>(), j.at("y0").get<double>(), j.at("x1").get<double>(), j.at("y1").get<double>()};
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::SchemaError, "box needs numeric x0, y0, x1, y1", path);
  }
  if (!b.valid()) throw Error(ErrorCode::InvalidLayout, "degenerate box", path);
  return b;
}

nlohmann::ordered_json box_json(const Box& b) { return nlohmann::ordered_json::array({b.x0, b.y0, b.x1, b.y1}); }

nlohmann::ordered_json marker_json(const std::optional<char>& m) {
  return m ? nlohmann::ordered_json(std::string(1, *m)) : nlohmann::ordered_json(nullptr);
}

}  // namespace

Box hull(std::span<const Box> boxes) {
  if (boxes.empty()) return {};
  Box h = boxes.front();
  for (const auto& b : boxes) {
    h.x0 = std::min(h.x0, b.x0);
    h.y0 = std::min(h.y0, b.y0);
    h.x1 = std::max(h.x1, b.x1);
    h.y1 = std::max(h.y1, b.y1);
  }
  return h;
}

double edge_distance_sq(const Box& a, const Box& b) noexcept {
  const double dx = std::max({0.0, a.x0 - b.x1, b.x0 - a.x1});
  const double dy = std::max({0.0, a.y0 - b.y1, b.y0 - a.y1});
  return dx * dx + dy * dy;
}

std::optional<char> marker_letter(std::string_view text) {
  const auto t = detail::trim(text);
  if (t.size() == 1 && is_letter(t[0])) return detail::to_upper(t[0]);
  if (t.size() == 2 && is_letter(t[0]) && (t[1] == ')' || t[1] == '.')) return detail::to_upper(t[0]);
  if (t.size() == 3 && t[0] == '(' && is_letter(t[1]) && t[2] == ')') return detail::to_upper(t[1]);
  return std::nullopt;
}

MarkerDetection detect_markers(std::span<const TextBox> text_boxes) {
  MarkerDetection out;
  std::map<char, std::size_t> chosen;  // letter -> index into text_boxes
  for (std::size_t i = 0; i < text_boxes.size(); ++i) {
    const auto letter = marker_letter(text_boxes[i].text);
    if (!letter) continue;
    auto [it, fresh] = chosen.emplace(*letter, i);
    if (!fresh && text_boxes[i].box.area() < text_boxes[it->second].box.area()) it->second = i;
  }
  std::vector<bool> is_marker(text_boxes.size(), false);
  for (const auto& [letter, idx] : chosen) {
    out.markers.push_back(Marker{letter, text_boxes[idx]});
    is_marker[idx] = true;
  }
  for (std::size_t i = 0; i < text_boxes.size(); ++i) {
    if (!is_marker[i] && !detail::trim(text_boxes[i].text).empty()) out.labels.push_back(text_boxes[i]);
  }
  return out;
}

MarkerAssignment assign_markers(std::span<const Marker> markers, std::span<const Box> regions) {
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (!regions[i].valid()) throw Error(ErrorCode::InvalidLayout, "degenerate region", std::to_string(i));
    for (std::size_t j = i + 1; j < regions.size(); ++j) {
      if (regions[i].overlaps(regions[j])) {
        throw Error(ErrorCode::InvalidLayout, "regions overlap", std::to_string(i) + "," + std::to_string(j));
      }
    }
  }
  MarkerAssignment out;
  if (markers.empty()) {
    auto& group = out[std::nullopt];
    for (std::size_t i = 0; i < regions.size(); ++i) group.push_back(i);
    return out;
  }
  for (const auto& m : markers) out[m.letter];
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const Marker* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& m : markers) {
      const double d = edge_distance_sq(m.box.box, regions[i]);
      if (d < best_d || (d == best_d && best != nullptr && m.letter < best->letter)) {
        best = &m;
        best_d = d;
      }
    }
    out[best->letter].push_back(i);
  }
  return out;
}

std::vector<SubfigureRecord> merge_regions(const MarkerAssignment& assignment, std::span<const Box> regions,
                                           std::span<const TextBox> labels) {
  std::vector<SubfigureRecord> out;
  for (const auto& [marker, indices] : assignment) {
    if (indices.empty()) continue;
    SubfigureRecord rec;
    rec.marker = marker;
    rec.region_indices = indices;
    for (auto i : indices) rec.regions.push_back(regions[i]);
    rec.bbox = hull(rec.regions);
    for (const auto& l : labels) {
      if (l.box.intersects(rec.bbox)) rec.labels.push_back(l);
    }
    out.push_back(std::move(rec));
  }
  std::stable_sort(out.begin(), out.end(), [](const SubfigureRecord& a, const SubfigureRecord& b) {
    if (a.marker != b.marker) return a.marker < b.marker;
    return std::tie(a.bbox.y0, a.bbox.x0) < std::tie(b.bbox.y0, b.bbox.x0);
  });
  return out;
}

CaptionSplit split_caption(std::string_view caption) {
  std::vector<MarkerToken> tokens;
  char next_min = 'A';
  bool first = true;
  for (std::size_t i = 0; i < caption.size(); ++i) {
    auto tok = marker_at(caption, i);
    if (!tok) continue;
    if (first ? tok->letter != 'A' : tok->letter < next_min) continue;
    tokens.push_back(*tok);
    first = false;
    next_min = static_cast<char>(tok->letter + 1);
    i += tok->len - 1;
  }
  CaptionSplit out;
  const std::size_t first_pos = tokens.empty() ? caption.size() : tokens.front().pos;
  out.preamble = std::string(detail::trim(caption.substr(0, first_pos)));
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    const auto& t = tokens[k];
    const std::size_t begin = t.pos + t.len;
    const std::size_t end = k + 1 < tokens.size() ? tokens[k + 1].pos : caption.size();
    out.fragments.push_back(CaptionFragment{t.letter, std::string(caption.substr(t.pos, t.len)),
                                            std::string(detail::trim(caption.substr(begin, end - begin)))});
  }
  return out;
}

std::map<std::string, std::string> CaptionSplit::as_map() const {
  std::map<std::string, std::string> out;
  if (!preamble.empty() || fragments.empty()) out["*"] = preamble;
  for (const auto& f : fragments) out[std::string(1, f.letter)] = f.text;
  return out;
}

std::string CaptionSplit::reconstruct() const {
  std::string out = preamble;
  auto append = [&](const std::string& piece) {
    if (piece.empty()) return;
    if (!out.empty()) out.push_back(' ');
    out += piece;
  };
  for (const auto& f : fragments) {
    append(f.marker);
    append(f.text);
  }
  return out;
}

AlignResult align(std::vector<SubfigureRecord> records, const CaptionSplit& caption, std::string_view figure_id,
                  const std::map<std::string, std::vector<std::string>>* alias_index) {
  AlignResult out;
  std::set<char> used;
  for (auto& rec : records) {
    const CaptionFragment* match = nullptr;
    if (rec.marker) {
      for (const auto& f : caption.fragments) {
        if (f.letter == *rec.marker) match = &f;
      }
    }
    if (match) {
      rec.subcaption = match->text;
      used.insert(match->letter);
    } else {
      rec.subcaption = caption.preamble;
    }
    if (alias_index) {
      std::set<std::string> seen;
      for (const auto& label : rec.labels) {
        auto it = alias_index->find(std::string(detail::trim(label.text)));
        if (it == alias_index->end()) continue;
        for (const auto& id : it->second) {
          if (seen.insert(id).second) rec.groundings.push_back(Grounding{std::string(figure_id), rec.marker, id});
        }
      }
    }
  }
  for (const auto& f : caption.fragments) {
    if (used.count(f.letter) == 0) out.leftovers.push_back(f.letter);
  }
  out.records = std::move(records);
  return out;
}

FigureLayout parse_figure_layout(std::string_view text) {
  const auto root = nlohmann::json::parse(text.begin(), text.end(), nullptr, false);
  if (root.is_discarded() || !root.is_object()) throw Error(ErrorCode::SchemaError, "layout must be a JSON object", "$");
  FigureLayout layout;
  try {
    layout.figure_id = root.at("figure_id").get<std::string>();
    layout.paper_id = root.value("paper_id", std::string());
    layout.width = root.value("width", 0.0);
    layout.height = root.value("height", 0.0);
    layout.caption = root.value("caption", std::string());
    const auto& regions = root.at("regions");
    for (std::size_t i = 0; i < regions.size(); ++i) {
      layout.regions.push_back(parse_box(regions.at(i), "$.regions[" + std::to_string(i) + "]"));
    }
    const auto& boxes = root.value("text_boxes", nlohmann::json::array());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      const std::string path = "$.text_boxes[" + std::to_string(i) + "]";
      TextBox tb{parse_box(boxes.at(i), path), boxes.at(i).at("text").get<std::string>()};
      if (detail::trim(tb.text).empty()) throw Error(ErrorCode::InvalidLayout, "text box has no text", path);
      layout.text_boxes.push_back(std::move(tb));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaError, e.what(), "$");
  }
  return layout;
}

AlignResult process_figure(const FigureLayout& layout,
                           const std::map<std::string, std::vector<std::string>>* alias_index) {
  const auto detection = detect_markers(layout.text_boxes);
  const auto assignment = assign_markers(detection.markers, layout.regions);
  auto records = merge_regions(assignment, layout.regions, detection.labels);
  return align(std::move(records), split_caption(layout.caption), layout.figure_id, alias_index);
}

std::string subfigures_to_json(const std::vector<SubfigureRecord>& records, int indent) {
  using ordered = nlohmann::ordered_json;
  ordered out = ordered::array();
  for (const auto& r : records) {
    ordered regions = ordered::array();
    for (const auto& b : r.regions) regions.push_back(box_json(b));
    ordered labels = ordered::array();
    for (const auto& l : r.labels) labels.push_back({{"bbox", box_json(l.box)}, {"text", l.text}});
    ordered groundings = ordered::array();
    for (const auto& g : r.groundings) {
      groundings.push_back({{"figure_id", g.figure_id}, {"marker", marker_json(g.marker)}, {"entity_id", g.entity_id}});
    }
    out.push_back({{"marker", marker_json(r.marker)},
                   {"bbox", box_json(r.bbox)},
                   {"region_indices", r.region_indices},
                   {"regions", std::move(regions)},
                   {"labels", std::move(labels)},
                   {"subcaption", r.subcaption ? ordered(*r.subcaption) : ordered(nullptr)},
                   {"groundings", std::move(groundings)}});
  }
  return out.dump(indent);
}

}  // namespace litkg
