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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "elcand/kb_store.hpp"
#include "elcand/normalize.hpp"
#include "elcand/scored.hpp"

namespace elcand {

struct AliasEntry {
  std::string entity_id;
  std::int64_t count = 0;
  double prob = 0.0;  // count / total count of the surface

  bool operator==(const AliasEntry&) const = default;
};

struct AliasCount {
  std::string surface;  // raw, pre-normalization
  std::string entity_id;
  std::int64_t count = 0;
};

/// Normalized surface form -> entities scored by p(entity | surface).
class AliasTable {
 public:
  AliasTable() = default;
  AliasTable(std::unordered_map<std::string, std::vector<AliasEntry>> entries,
             NormalizationConfig config, std::size_t skipped_unknown);

  const NormalizationConfig& config() const { return config_; }
  std::size_t surface_count() const { return entries_.size(); }
  /// Count records dropped because their entity is not in the store.
  std::size_t skipped_unknown() const { return skipped_unknown_; }

  /// Entries for an already-normalized key, prob descending; nullptr if absent.
  const std::vector<AliasEntry>* find(std::string_view normalized) const;
  const AliasEntry* find(std::string_view normalized, std::string_view entity_id) const;

  std::vector<std::string> sorted_keys() const;

  /// TSV: surface, entity id, count, prob; keys ascending.
  void write_tsv(std::ostream& out) const;

 private:
  std::unordered_map<std::string, std::vector<AliasEntry>> entries_;
  NormalizationConfig config_;
  std::size_t skipped_unknown_ = 0;
};

/// Three tab-separated columns per line: surface, entity id, count.
std::vector<AliasCount> read_alias_counts(std::istream& in);
std::vector<AliasCount> load_alias_counts(const std::filesystem::path& path);

/// Merges count records with the store's titles and aliases (count 1 for any
/// (surface, entity) pair the counts do not mention) and computes
/// maximum-likelihood probabilities without smoothing.
AliasTable build_alias_table(const EntityStore& store,
                             std::span<const AliasCount> counts,
                             const NormalizationConfig& config = {});

/// Exact match on the normalized surface. Without a limit every entry is
/// returned.
std::vector<ScoredCandidate> lookup_candidates(const AliasTable& table,
                                               std::string_view surface,
                                               std::optional<std::size_t> limit = std::nullopt);

struct Bm25Params {
  double k1 = 0.9;
  double b = 0.4;
};

struct Posting {
  std::uint32_t doc = 0;  // index into doc_ids()
  std::uint32_t tf = 0;

  bool operator==(const Posting&) const = default;
};

class Bm25Index {
 public:
  using Document = std::pair<std::string, std::string>;  // id, text

  /// Throws kDuplicate on a repeated document id.
  static Bm25Index build(std::span<const Document> docs, Bm25Params params = {});

  std::size_t doc_count() const { return doc_ids_.size(); }
  double avg_doc_length() const { return avg_doc_length_; }
  const Bm25Params& params() const { return params_; }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  const std::vector<std::uint32_t>& doc_lengths() const { return doc_lengths_; }
  std::size_t term_count() const { return postings_.size(); }

  /// Postings in ascending document order; empty for unknown terms.
  std::span<const Posting> postings(std::string_view term) const;

  /// Okapi BM25 with idf = ln((N - df + 0.5) / (df + 0.5) + 1). Repeated
  /// query terms count once. Zero-score documents are omitted.
  std::vector<ScoredCandidate> search(std::string_view query,
                                      std::size_t k) const;

 private:
  Bm25Params params_;
  std::vector<std::string> doc_ids_;
  std::vector<std::uint32_t> doc_lengths_;
  double avg_doc_length_ = 0.0;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
};

inline Bm25Index build_bm25_index(std::span<const Bm25Index::Document> docs,
                                  Bm25Params params = {}) {
  return Bm25Index::build(docs, params);
}

/// Abstracts are the first max_sentences sentences of each long description.
Bm25Index build_bm25_index(const EntityStore& store, std::size_t max_sentences,
                           Bm25Params params = {});

inline std::vector<ScoredCandidate> bm25_search(const Bm25Index& index,
                                                std::string_view query,
                                                std::size_t k) {
  return index.search(query, k);
}

}  // namespace elcand
