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
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elcand/dense_index.hpp"
#include "elcand/encoding.hpp"
#include "elcand/kb_store.hpp"
#include "elcand/scored.hpp"
#include "elcand/sparse.hpp"

namespace elcand {

/// How far down a method's ranked list the candidates were taken. Lookup
/// candidates are unranked in evaluation, so they carry all = true and k = 0.
struct MethodLimit {
  bool all = false;
  std::size_t k = kDefaultTopK;

  bool operator==(const MethodLimit&) const = default;
};

struct Candidate {
  std::string entity_id;
  std::map<Method, double> scores;
  std::map<Method, std::size_t> ranks;  // 0-based position in that method's list

  std::set<Method> methods() const;
  bool operator==(const Candidate&) const = default;
};

struct CandidateSet {
  std::string tweet_id;
  SpanAnnotation span;
  std::vector<Candidate> candidates;
  std::map<Method, MethodLimit> method_config;

  /// True when some method placed the candidate within the first k of its
  /// list, or the method's list is evaluated whole.
  bool within(const Candidate& c, std::size_t k) const;
  std::vector<std::string> ids_within(std::size_t k) const;
  std::vector<std::string> ids() const;
  const Candidate* find(std::string_view entity_id) const;

  bool operator==(const CandidateSet&) const = default;
};

/// Non-owning view of whatever backends a run has built. Null members are
/// simply unavailable.
struct Backends {
  const EntityStore* store = nullptr;
  const AliasTable* alias_table = nullptr;
  const DenseIndex* dense_index = nullptr;
  const Bm25Index* bm25_index = nullptr;
  const EmbeddingProvider* mention_provider = nullptr;
};

/// dense: embed the mention and take the top k by dot product.
/// bm25: query the abstracts with the surface and take the top k.
/// lookup: every exact alias match, unranked for evaluation.
CandidateSet retrieve(Method method, std::string_view tweet_text,
                      const SpanAnnotation& span, const Backends& backends,
                      std::size_t k = kDefaultTopK);

/// Same-span union with provenance and per-method scores kept side by side.
/// Order: every candidate of a in order, then candidates of b not already
/// present. Called as hybrid_union(lookup, dense) this yields lookup by prob
/// then dense by score.
CandidateSet hybrid_union(const CandidateSet& a, const CandidateSet& b);

/// One JSON object per span: tweet_id, start, end, candidates.
void write_candidates_jsonl(std::ostream& out, std::span<const CandidateSet> sets);
std::vector<CandidateSet> read_candidates_jsonl(std::istream& in);

}  // namespace elcand
