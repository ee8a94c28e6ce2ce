// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "litkg/embedding.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "litkg/digest.hpp"
#include "litkg/error.hpp"
#include "text_util.hpp"

namespace litkg {

std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

double l2_norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

EmbeddingVector normalized(EmbeddingVector v) {
  const double n = l2_norm(v);
  if (n == 0.0 || !std::isfinite(n)) {
    std::fill(v.begin(), v.end(), 0.0);
    if (!v.empty()) v[0] = 1.0;
    return v;
  }
  for (auto& x : v) x /= n;
  return v;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  const double na = l2_norm(a);
  const double nb = l2_norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

HashingEmbeddingProvider::HashingEmbeddingProvider(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "embedding dimension must be positive");
}

std::string HashingEmbeddingProvider::name() const { return "hashing-" + std::to_string(dim_); }

EmbeddingVector HashingEmbeddingProvider::embed(std::string_view text) const {
  EmbeddingVector v(dim_, 0.0);
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    const auto h = fnv1a64(token);
    v[h % dim_] += ((h >> 32) & 1u) ? -1.0 : 1.0;
    token.clear();
  };
  for (char c : text) {
    if (detail::is_ascii_alnum(c)) {
      token.push_back(detail::to_lower(c));
    } else {
      flush();
    }
  }
  flush();
  return normalized(std::move(v));
}

SidecarEmbeddingProvider::SidecarEmbeddingProvider(std::string_view contents,
                                                   std::shared_ptr<const EmbeddingProvider> fallback)
    : fallback_(std::move(fallback)), digest_(sha256_hex(contents).substr(0, 12)) {
  if (!fallback_) throw Error(ErrorCode::ConfigError, "sidecar provider needs a fallback");
  std::istringstream in{std::string(contents)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw Error(ErrorCode::ConfigError, "sidecar line lacks a tab", std::to_string(line_no));
    EmbeddingVector v;
    for (const auto& field : detail::split_list(std::string_view(line).substr(tab + 1), ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(field, &used));
        if (used != field.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw Error(ErrorCode::ConfigError, "sidecar value is not a number", std::to_string(line_no));
      }
    }
    if (v.size() != fallback_->dim()) {
      throw Error(ErrorCode::ConfigError, "sidecar vector has wrong dimension", std::to_string(line_no));
    }
    vectors_[line.substr(0, tab)] = normalized(std::move(v));
  }
}

std::shared_ptr<SidecarEmbeddingProvider> SidecarEmbeddingProvider::load(
    const std::filesystem::path& path, std::shared_ptr<const EmbeddingProvider> fallback) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open sidecar file", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::make_shared<SidecarEmbeddingProvider>(buf.str(), std::move(fallback));
}

std::string SidecarEmbeddingProvider::name() const { return "sidecar-" + digest_ + "+" + fallback_->name(); }

EmbeddingVector SidecarEmbeddingProvider::embed(std::string_view text) const {
  if (auto it = vectors_.find(sha256_hex(text)); it != vectors_.end()) return it->second;
  return fallback_->embed(text);
}

}  // namespace litkg
