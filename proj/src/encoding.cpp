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

#include "elcand/encoding.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "elcand/error.hpp"
#include "elcand/text.hpp"

namespace elcand {

std::string_view to_string(SpanSource source) {
  return source == SpanSource::kGold ? "gold" : "ner";
}

SpanSource parse_span_source(std::string_view s) {
  if (s == "gold") return SpanSource::kGold;
  if (s == "ner") return SpanSource::kNer;
  fail(ErrorCode::kInvalidArgument,
       "span source must be 'gold' or 'ner', got '" + std::string(s) + "'");
}

std::string MentionInput::render() const {
  return left + " " + surface + " " + right;
}

std::string MentionInput::render_marked() const {
  return left + " [M1] " + surface + " [M2] " + right;
}

std::string EntityInput::render() const { return title + " " + description; }

std::string EntityInput::render_marked() const {
  return title + " [M3] " + description;
}

MentionInput build_mention_input(std::string_view tweet_text,
                                 const SpanAnnotation& span) {
  const std::size_t length = text::length_utf8(tweet_text);
  if (span.start >= span.end || span.end > length) {
    fail(ErrorCode::kInvalidArgument,
         "span [" + std::to_string(span.start) + ", " +
             std::to_string(span.end) + ") in tweet " + span.tweet_id +
             " must satisfy start < end <= " + std::to_string(length));
  }
  const std::size_t lo = text::byte_offset(tweet_text, span.start);
  const std::size_t hi = text::byte_offset(tweet_text, span.end);
  MentionInput m{std::string(tweet_text.substr(0, lo)),
                 std::string(tweet_text.substr(lo, hi - lo)),
                 std::string(tweet_text.substr(hi))};
  if (m.surface != span.surface) {
    fail(ErrorCode::kInvalidArgument,
         "span surface '" + span.surface + "' does not match text '" +
             m.surface + "' in tweet " + span.tweet_id);
  }
  return m;
}

namespace {

constexpr std::array<std::string_view, 10> kAbbreviations = {
    "Dr.", "Mr.", "Mrs.", "Ms.", "St.", "No.", "vs.", "etc.", "e.g.", "i.e."};

bool is_terminator(char32_t cp) { return cp == U'.' || cp == U'!' || cp == U'?'; }

bool ends_with_abbreviation(const std::u32string& cps, std::size_t dot) {
  std::size_t lo = dot;
  while (lo > 0 && !text::is_space(cps[lo - 1])) --lo;
  const std::string token = text::encode_utf8(
      std::u32string_view(cps).substr(lo, dot - lo + 1));
  for (std::string_view abbr : kAbbreviations) {
    if (token == abbr) return true;
  }
  return false;
}

}  // namespace

std::span<const std::string_view> abbreviation_list() { return kAbbreviations; }

std::vector<std::string> split_sentences(std::string_view input) {
  const std::u32string cps = text::decode_utf8(input);
  const std::size_t n = cps.size();
  std::vector<std::string> out;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_terminator(cps[i])) continue;
    if (i + 1 < n && is_terminator(cps[i + 1])) continue;
    if (cps[i] == U'.' && ends_with_abbreviation(cps, i)) continue;
    std::size_t j = i + 1;
    while (j < n && text::is_space(cps[j])) ++j;
    if (j == n) break;  // trailing whitespace stays with the last sentence
    if (j == i + 1 || !text::is_upper(cps[j])) continue;
    out.push_back(
        text::encode_utf8(std::u32string_view(cps).substr(begin, j - begin)));
    begin = j;
    i = j - 1;
  }
  if (begin < n) {
    out.push_back(text::encode_utf8(std::u32string_view(cps).substr(begin)));
  }
  return out;
}

std::string first_sentences(std::string_view text_in,
                            std::size_t max_sentences) {
  const auto sentences = split_sentences(text_in);
  std::string joined;
  for (std::size_t i = 0; i < sentences.size() && i < max_sentences; ++i) {
    joined += sentences[i];
  }
  std::u32string cps = text::decode_utf8(joined);
  while (!cps.empty() && text::is_space(cps.back())) cps.pop_back();
  return text::encode_utf8(cps);
}

EntityInput build_entity_input(const Entity& entity, DescriptionMode mode,
                               std::size_t max_sentences) {
  const std::string& desc = mode == DescriptionMode::kLong
                                ? entity.long_description
                                : entity.short_description;
  return {entity.title, first_sentences(desc, max_sentences)};
}

double dot(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    fail(ErrorCode::kDimMismatch, "dot product of vectors with dims " +
                                      std::to_string(a.size()) + " and " +
                                      std::to_string(b.size()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return acc;
}

void VectorTable::add(std::string id, std::span<const float> values) {
  if (dim_ == 0) dim_ = values.size();
  if (values.size() != dim_ || dim_ == 0) {
    fail(ErrorCode::kDimMismatch,
         "vector for " + id + " has dim " + std::to_string(values.size()) +
             ", table dim is " + std::to_string(dim_));
  }
  if (!index_.emplace(id, ids_.size()).second) {
    fail(ErrorCode::kDuplicate, "duplicate vector id " + id);
  }
  ids_.push_back(std::move(id));
  data_.insert(data_.end(), values.begin(), values.end());
}

const float* VectorTable::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : data_.data() + it->second * dim_;
}

std::span<const float> VectorTable::at(std::string_view id) const {
  const float* p = find(id);
  if (p == nullptr) {
    fail(ErrorCode::kNotFound, "no vector for id " + std::string(id));
  }
  return {p, dim_};
}

namespace {

constexpr std::array<char, 4> kMagic = {'E', 'L', 'V', 'C'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in, const char* what) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    fail(ErrorCode::kParse, std::string("truncated vector file while reading ") + what);
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  }
  return static_cast<T>(v);
}

}  // namespace

VectorTable read_vectors(std::istream& in, std::size_t expected_dim) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (in.gcount() != 4 || magic != kMagic) {
    fail(ErrorCode::kParse, "not a vector file (bad magic)");
  }
  const auto version = get_le<std::uint32_t>(in, "version");
  if (version != kVersion) {
    fail(ErrorCode::kParse,
         "unsupported vector file version " + std::to_string(version));
  }
  const auto dim = get_le<std::uint32_t>(in, "dim");
  const auto count = get_le<std::uint64_t>(in, "count");
  if (dim == 0) fail(ErrorCode::kDimMismatch, "vector file declares dim 0");
  if (expected_dim != 0 && dim != expected_dim) {
    fail(ErrorCode::kDimMismatch,
         "vector file dim " + std::to_string(dim) + " does not match expected " +
             std::to_string(expected_dim));
  }
  VectorTable table(dim);
  std::vector<float> row(dim);
  for (std::uint64_t r = 0; r < count; ++r) {
    const auto id_len = get_le<std::uint16_t>(in, "record id length");
    std::string id(id_len, '\0');
    in.read(id.data(), id_len);
    if (in.gcount() != id_len) {
      fail(ErrorCode::kParse, "truncated vector file in record " +
                                  std::to_string(r) + " of " +
                                  std::to_string(count));
    }
    text::length_utf8(id);
    for (auto& v : row) {
      v = std::bit_cast<float>(get_le<std::uint32_t>(in, "vector values"));
    }
    table.add(std::move(id), row);
  }
  return table;
}

VectorTable load_vectors(const std::filesystem::path& path,
                         std::size_t expected_dim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open vector file " + path.string());
  VectorTable table = read_vectors(in, expected_dim);
  if (in.peek() != std::char_traits<char>::eof()) {
    fail(ErrorCode::kParse, "trailing bytes after last record in " + path.string());
  }
  return table;
}

void write_vectors(std::ostream& out, const VectorTable& table) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(table.dim()));
  put_le<std::uint64_t>(out, table.size());
  for (std::size_t r = 0; r < table.size(); ++r) {
    const std::string& id = table.ids()[r];
    if (id.size() > 0xFFFF) {
      fail(ErrorCode::kInvalidArgument, "vector id longer than 65535 bytes");
    }
    put_le<std::uint16_t>(out, static_cast<std::uint16_t>(id.size()));
    out.write(id.data(), static_cast<std::streamsize>(id.size()));
    for (float v : table.row(r)) put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(v));
  }
}

std::string_view to_string(ProviderKind kind) {
  return kind == ProviderKind::kReferenceHash ? "reference_hash" : "precomputed";
}

ProviderKind parse_provider_kind(std::string_view s) {
  if (s == "reference_hash") return ProviderKind::kReferenceHash;
  if (s == "precomputed") return ProviderKind::kPrecomputed;
  fail(ErrorCode::kInvalidArgument,
       "embedder kind must be 'reference_hash' or 'precomputed', got '" +
           std::string(s) + "'");
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ReferenceHashEmbedder::ReferenceHashEmbedder(std::size_t dim) : dim_(dim) {
  if (dim == 0) fail(ErrorCode::kInvalidArgument, "embedder dim must be positive");
}

Vector ReferenceHashEmbedder::embed(const EmbedRequest& request) const {
  std::vector<std::int64_t> counts(dim_, 0);
  auto add = [&](std::string_view feature) {
    const std::uint64_t h = fnv1a64(feature);
    counts[h % dim_] += (h >> 63) == 0 ? 1 : -1;
  };
  for (const auto& word : text::word_tokens(request.text)) add(word);
  std::u32string lower = text::decode_utf8(request.text);
  for (char32_t& cp : lower) cp = text::to_lower(cp);
  for (std::size_t i = 0; i + 3 <= lower.size(); ++i) {
    add(text::encode_utf8(std::u32string_view(lower).substr(i, 3)));
  }
  double norm = 0.0;
  for (std::int64_t c : counts) norm += static_cast<double>(c) * static_cast<double>(c);
  norm = std::sqrt(norm);
  Vector out;
  out.values.resize(dim_, 0.0f);
  if (norm > 0.0) {
    for (std::size_t i = 0; i < dim_; ++i) {
      out.values[i] = static_cast<float>(static_cast<double>(counts[i]) / norm);
    }
  }
  return out;
}

PrecomputedEmbedder::PrecomputedEmbedder(VectorTable table)
    : table_(std::move(table)) {
  if (table_.dim() == 0) {
    fail(ErrorCode::kInvalidArgument, "precomputed vector table is empty");
  }
}

Vector PrecomputedEmbedder::embed(const EmbedRequest& request) const {
  auto row = table_.at(request.key);
  return Vector{{row.begin(), row.end()}};
}

std::string mention_key(const SpanAnnotation& span) {
  return span.tweet_id + ":" + std::to_string(span.start) + ":" +
         std::to_string(span.end);
}

Vector embed_mention(const EmbeddingProvider& provider,
                     std::string_view tweet_text, const SpanAnnotation& span) {
  const MentionInput m = build_mention_input(tweet_text, span);
  const std::string key = mention_key(span);
  const std::string rendered = m.render();
  return provider.embed({key, rendered});
}

Vector embed_entity(const EmbeddingProvider& provider, const Entity& entity,
                    DescriptionMode mode, std::size_t max_sentences) {
  const std::string rendered =
      build_entity_input(entity, mode, max_sentences).render();
  return provider.embed({entity.id, rendered});
}

}  // namespace elcand
