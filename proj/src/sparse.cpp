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

#include "elcand/sparse.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "elcand/encoding.hpp"
#include "elcand/error.hpp"
#include "elcand/text.hpp"

namespace elcand {

namespace {

bool entry_order(const AliasEntry& a, const AliasEntry& b) {
  if (a.prob != b.prob) return a.prob > b.prob;
  return a.entity_id < b.entity_id;
}

}  // namespace

AliasTable::AliasTable(std::unordered_map<std::string, std::vector<AliasEntry>> entries,
                       NormalizationConfig config, std::size_t skipped_unknown)
    : entries_(std::move(entries)), config_(config), skipped_unknown_(skipped_unknown) {
  for (auto& [key, list] : entries_) std::sort(list.begin(), list.end(), entry_order);
}

const std::vector<AliasEntry>* AliasTable::find(std::string_view normalized) const {
  auto it = entries_.find(std::string(normalized));
  return it == entries_.end() ? nullptr : &it->second;
}

const AliasEntry* AliasTable::find(std::string_view normalized,
                                   std::string_view entity_id) const {
  const auto* list = find(normalized);
  if (list == nullptr) return nullptr;
  for (const auto& e : *list) {
    if (e.entity_id == entity_id) return &e;
  }
  return nullptr;
}

std::vector<std::string> AliasTable::sorted_keys() const {
  std::vector<std::string> keys;
  keys.reserve(entries_.size());
  for (const auto& [key, list] : entries_) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  return keys;
}

void AliasTable::write_tsv(std::ostream& out) const {
  char buf[64];
  for (const auto& key : sorted_keys()) {
    for (const auto& e : entries_.at(key)) {
      auto res = std::to_chars(buf, buf + sizeof buf, e.prob);
      out << key << '\t' << e.entity_id << '\t' << e.count << '\t'
          << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)) << '\n';
    }
  }
}

std::vector<AliasCount> read_alias_counts(std::istream& in) {
  std::vector<AliasCount> out;
  std::string raw;
  std::size_t line = 0;
  auto bad = [&](const std::string& what) {
    fail(ErrorCode::kParse, "alias counts line " + std::to_string(line) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;
    const auto t1 = raw.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : raw.find('\t', t1 + 1);
    if (t2 == std::string::npos || raw.find('\t', t2 + 1) != std::string::npos) {
      bad("expected 3 tab-separated columns");
    }
    AliasCount rec;
    rec.surface = raw.substr(0, t1);
    rec.entity_id = raw.substr(t1 + 1, t2 - t1 - 1);
    const std::string count = raw.substr(t2 + 1);
    auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), rec.count);
    if (ec != std::errc() || ptr != count.data() + count.size() || rec.count <= 0) {
      bad("count '" + count + "' is not a positive integer");
    }
    if (rec.entity_id.empty()) bad("empty entity id");
    if (normalize_surface(rec.surface).empty()) {
      bad("empty surface form");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<AliasCount> load_alias_counts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open alias counts file " + path.string());
  return read_alias_counts(in);
}

AliasTable build_alias_table(const EntityStore& store,
                             std::span<const AliasCount> counts,
                             const NormalizationConfig& config) {
  // key -> entity -> count; std::map keeps the merge deterministic.
  std::map<std::string, std::map<std::string, std::int64_t>> merged;
  std::size_t skipped = 0;
  for (const auto& rec : counts) {
    if (store.find(rec.entity_id) == nullptr) {
      ++skipped;
      continue;
    }
    std::string key = normalize_surface(rec.surface, config);
    if (key.empty()) {
      ++skipped;
      continue;
    }
    merged[std::move(key)][rec.entity_id] += rec.count;
  }
  for (const Entity& e : store.entities()) {
    auto inject = [&](const std::string& surface) {
      std::string key = normalize_surface(surface, config);
      if (key.empty()) return;
      merged[std::move(key)].try_emplace(e.id, 1);
    };
    inject(e.title);
    for (const auto& alias : e.aliases) inject(alias);
  }
  std::unordered_map<std::string, std::vector<AliasEntry>> entries;
  entries.reserve(merged.size());
  for (auto& [key, by_entity] : merged) {
    std::int64_t total = 0;
    for (const auto& [id, c] : by_entity) total += c;
    auto& list = entries[key];
    list.reserve(by_entity.size());
    for (const auto& [id, c] : by_entity) {
      list.push_back({id, c, static_cast<double>(c) / static_cast<double>(total)});
    }
  }
  return AliasTable(std::move(entries), config, skipped);
}

std::vector<ScoredCandidate> lookup_candidates(const AliasTable& table,
                                               std::string_view surface,
                                               std::optional<std::size_t> limit) {
  std::vector<ScoredCandidate> out;
  const auto* list = table.find(normalize_surface(surface, table.config()));
  if (list == nullptr) return out;
  const std::size_t n = limit ? std::min(*limit, list->size()) : list->size();
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({(*list)[i].entity_id, (*list)[i].prob, Method::kLookup});
  }
  return out;
}

Bm25Index Bm25Index::build(std::span<const Document> docs, Bm25Params params) {
  Bm25Index index;
  index.params_ = params;
  std::set<std::string> seen;
  std::uint64_t total = 0;
  for (const auto& [id, body] : docs) {
    if (!seen.insert(id).second) fail(ErrorCode::kDuplicate, "duplicate document id " + id);
    const auto doc = static_cast<std::uint32_t>(index.doc_ids_.size());
    index.doc_ids_.push_back(id);
    const auto tokens = text::word_tokens(body);
    index.doc_lengths_.push_back(static_cast<std::uint32_t>(tokens.size()));
    total += tokens.size();
    std::map<std::string, std::uint32_t> tf;
    for (const auto& t : tokens) ++tf[t];
    for (auto& [term, freq] : tf) index.postings_[term].push_back({doc, freq});
  }
  index.avg_doc_length_ = index.doc_ids_.empty()
                              ? 0.0
                              : static_cast<double>(total) / static_cast<double>(index.doc_ids_.size());
  return index;
}

std::span<const Posting> Bm25Index::postings(std::string_view term) const {
  auto it = postings_.find(std::string(term));
  if (it == postings_.end()) return {};
  return it->second;
}

std::vector<ScoredCandidate> Bm25Index::search(std::string_view query,
                                               std::size_t k) const {
  std::vector<ScoredCandidate> out;
  if (k == 0 || doc_ids_.empty()) return out;
  const auto tokens = text::word_tokens(query);
  const std::set<std::string> terms(tokens.begin(), tokens.end());
  const double n = static_cast<double>(doc_ids_.size());
  std::vector<double> scores(doc_ids_.size(), 0.0);
  for (const auto& term : terms) {
    auto it = postings_.find(term);
    if (it == postings_.end()) continue;
    const double df = static_cast<double>(it->second.size());
    const double idf = std::log((n - df + 0.5) / (df + 0.5) + 1.0);
    for (const Posting& p : it->second) {
      const double tf = p.tf;
      const double norm = params_.k1 * (1.0 - params_.b +
                                        params_.b * doc_lengths_[p.doc] / avg_doc_length_);
      scores[p.doc] += idf * tf * (params_.k1 + 1.0) / (tf + norm);
    }
  }
  for (std::size_t d = 0; d < scores.size(); ++d) {
    if (scores[d] > 0.0) out.push_back({doc_ids_[d], scores[d], Method::kBm25});
  }
  const std::size_t keep = std::min(k, out.size());
  std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(keep), out.end(),
                    ranks_before);
  out.resize(keep);
  return out;
}

Bm25Index build_bm25_index(const EntityStore& store, std::size_t max_sentences,
                           Bm25Params params) {
  std::vector<Bm25Index::Document> docs;
  docs.reserve(store.size());
  for (const Entity& e : store.entities()) {
    docs.emplace_back(e.id, first_sentences(e.long_description, max_sentences));
  }
  return Bm25Index::build(docs, params);
}

}  // namespace elcand
