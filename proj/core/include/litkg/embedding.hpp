// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace litkg {

using EmbeddingVector = std::vector<double>;

/// Maps text to a unit-norm vector of fixed dimension. Implementations must
/// be deterministic and safe to call concurrently.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::string name() const = 0;
  virtual std::size_t dim() const = 0;
  virtual EmbeddingVector embed(std::string_view text) const = 0;
};

inline constexpr std::size_t kDefaultEmbeddingDim = 256;

/// Signed feature hashing of lower-cased ASCII alphanumeric tokens (FNV-1a
/// 64, bucket = h mod D, sign from bit 32), term frequencies, L2-normalized.
/// Text without tokens maps to the first basis vector.
class HashingEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit HashingEmbeddingProvider(std::size_t dim = kDefaultEmbeddingDim);
  std::string name() const override;
  std::size_t dim() const override { return dim_; }
  EmbeddingVector embed(std::string_view text) const override;

 private:
  std::size_t dim_;
};

/// Precomputed vectors keyed by the SHA-256 hex of the text; lines are
/// `id<TAB>v1,...,vD`. Unknown texts go to the fallback provider. Vectors are
/// normalized on load. Errors: ConfigError.
class SidecarEmbeddingProvider final : public EmbeddingProvider {
 public:
  SidecarEmbeddingProvider(std::string_view contents, std::shared_ptr<const EmbeddingProvider> fallback);
  static std::shared_ptr<SidecarEmbeddingProvider> load(const std::filesystem::path& path,
                                                         std::shared_ptr<const EmbeddingProvider> fallback);
  std::string name() const override;
  std::size_t dim() const override { return fallback_->dim(); }
  EmbeddingVector embed(std::string_view text) const override;
  std::size_t size() const noexcept { return vectors_.size(); }

 private:
  std::shared_ptr<const EmbeddingProvider> fallback_;
  std::unordered_map<std::string, EmbeddingVector> vectors_;
  std::string digest_;  // distinguishes cache entries of different sidecars
};

std::uint64_t fnv1a64(std::string_view s) noexcept;
double dot(std::span<const double> a, std::span<const double> b);
double l2_norm(std::span<const double> v);
// Unit vector in the same direction; the zero vector maps to e0.
EmbeddingVector normalized(EmbeddingVector v);
double cosine(std::span<const double> a, std::span<const double> b);

}  // namespace litkg
