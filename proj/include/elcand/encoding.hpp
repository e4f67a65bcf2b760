// Copyright 2026 The elcand Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "elcand/kb_store.hpp"

namespace elcand {

enum class SpanSource { kGold, kNer };

std::string_view to_string(SpanSource source);
SpanSource parse_span_source(std::string_view s);

/// A mention inside a tweet. Offsets count Unicode scalar values, [start, end).
struct SpanAnnotation {
  std::string tweet_id;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;
  std::vector<std::string> gold_ids;  // empty = NIL
  SpanSource source = SpanSource::kGold;

  bool operator==(const SpanAnnotation&) const = default;
};

/// Text left of the mention, the mention itself, and text right of it.
/// left + surface + right is always the original tweet.
struct MentionInput {
  std::string left;
  std::string surface;
  std::string right;

  /// Flat text handed to hashing providers.
  std::string render() const;
  /// Token-stream rendering with literal boundary markers.
  std::string render_marked() const;
};

struct EntityInput {
  std::string title;
  std::string description;

  std::string render() const;
  std::string render_marked() const;
};

/// Throws Error(kInvalidArgument) when the span is out of range or its
/// surface does not match the text at [start, end).
MentionInput build_mention_input(std::string_view tweet_text,
                                 const SpanAnnotation& span);

/// Splits after '.', '!' or '?' when the terminator is followed by
/// whitespace and an uppercase letter, or by nothing but whitespace. Tokens
/// in abbreviation_list() never end a sentence. Each sentence keeps the
/// whitespace that follows it, so concatenating the result gives back the
/// input.
std::vector<std::string> split_sentences(std::string_view text);

std::span<const std::string_view> abbreviation_list();

inline constexpr std::size_t kDefaultMaxSentences = 10;

/// First max_sentences sentences of the selected description, with trailing
/// whitespace trimmed.
std::string first_sentences(std::string_view text, std::size_t max_sentences);

EntityInput build_entity_input(const Entity& entity, DescriptionMode mode,
                               std::size_t max_sentences = kDefaultMaxSentences);

struct Vector {
  std::vector<float> values;

  std::size_t dim() const { return values.size(); }
  bool operator==(const Vector&) const = default;
};

double dot(std::span<const float> a, std::span<const float> b);

/// Id-keyed vector block. Rows keep insertion order.
class VectorTable {
 public:
  VectorTable() = default;
  explicit VectorTable(std::size_t dim) : dim_(dim) {}

  /// Throws kDimMismatch or kDuplicate.
  void add(std::string id, std::span<const float> values);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<std::string>& ids() const { return ids_; }
  std::span<const float> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  const float* find(std::string_view id) const;
  std::span<const float> at(std::string_view id) const;

  bool operator==(const VectorTable& other) const {
    return dim_ == other.dim_ && ids_ == other.ids_ && data_ == other.data_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> ids_;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Binary vector file: "ELVC", u32 version, u32 dim, u64 count, then per
/// record a u16 id length, the id bytes and dim little-endian f32 values.
/// When expected_dim is non-zero a header declaring another dim is rejected
/// with kDimMismatch.
VectorTable read_vectors(std::istream& in, std::size_t expected_dim = 0);
VectorTable load_vectors(const std::filesystem::path& path,
                         std::size_t expected_dim = 0);
void write_vectors(std::ostream& out, const VectorTable& table);

enum class ProviderKind { kReferenceHash, kPrecomputed };

std::string_view to_string(ProviderKind kind);
ProviderKind parse_provider_kind(std::string_view s);

/// What a provider is asked to embed: a stable key (entity id or mention key)
/// and the rendered template text. Hashing providers read the text;
/// precomputed providers resolve the key.
struct EmbedRequest {
  std::string_view key;
  std::string_view text;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::size_t dim() const = 0;
  virtual ProviderKind kind() const = 0;
  virtual Vector embed(const EmbedRequest& request) const = 0;
};

/// Feature-hashing embedder: lowercase word tokens then character trigrams of
/// the lowercased text, each hashed with 64-bit FNV-1a into dim signed
/// buckets, then L2-normalized.
class ReferenceHashEmbedder final : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDefaultDim = 256;

  explicit ReferenceHashEmbedder(std::size_t dim = kDefaultDim);

  std::size_t dim() const override { return dim_; }
  ProviderKind kind() const override { return ProviderKind::kReferenceHash; }
  Vector embed(const EmbedRequest& request) const override;

  Vector embed_text(std::string_view text) const { return embed({{}, text}); }

 private:
  std::size_t dim_;
};

/// Serves externally computed vectors; vectors pass through unmodified.
class PrecomputedEmbedder final : public EmbeddingProvider {
 public:
  explicit PrecomputedEmbedder(VectorTable table);

  std::size_t dim() const override { return table_.dim(); }
  ProviderKind kind() const override { return ProviderKind::kPrecomputed; }
  /// Throws Error(kNotFound) when the key has no vector.
  Vector embed(const EmbedRequest& request) const override;

 private:
  VectorTable table_;
};

std::uint64_t fnv1a64(std::string_view bytes);

/// Key used to look up a mention vector in a precomputed table.
std::string mention_key(const SpanAnnotation& span);

Vector embed_mention(const EmbeddingProvider& provider,
                     std::string_view tweet_text, const SpanAnnotation& span);
Vector embed_entity(const EmbeddingProvider& provider, const Entity& entity,
                    DescriptionMode mode,
                    std::size_t max_sentences = kDefaultMaxSentences);

}  // namespace elcand
