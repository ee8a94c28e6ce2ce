// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "litkg/registry.hpp"

#include <fstream>
#include <sstream>

#include "litkg/error.hpp"
#include "text_util.hpp"

namespace litkg {

Vocabulary Vocabulary::parse(std::string_view text) {
  Vocabulary v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (!line.empty()) v.entries_.emplace(line);
    pos = nl + 1;
  }
  return v;
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open registry file", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::shared_ptr<const Registry> Registry::builtin() {
  static const auto registry = std::make_shared<const Registry>(Registry{
      Vocabulary::parse(builtin_relation_subtypes_text()),
      Vocabulary::parse(builtin_event_types_text()),
  });
  return registry;
}

}  // namespace litkg
