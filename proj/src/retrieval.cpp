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

#include "elcand/retrieval.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "elcand/error.hpp"

namespace elcand {

using nlohmann::json;

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kLookup:
      return "lookup";
    case Method::kDense:
      return "dense";
    case Method::kBm25:
      return "bm25";
  }
  return "unknown";
}

Method parse_method(std::string_view s) {
  if (s == "lookup") return Method::kLookup;
  if (s == "dense") return Method::kDense;
  if (s == "bm25") return Method::kBm25;
  fail(ErrorCode::kInvalidArgument,
       "method must be one of lookup, dense, bm25; got '" + std::string(s) + "'");
}

std::set<Method> Candidate::methods() const {
  std::set<Method> out;
  for (const auto& [m, s] : scores) out.insert(m);
  return out;
}

bool CandidateSet::within(const Candidate& c, std::size_t k) const {
  for (const auto& [m, rank] : c.ranks) {
    auto it = method_config.find(m);
    if (it != method_config.end() && it->second.all) return true;
    if (rank < k) return true;
  }
  return false;
}

std::vector<std::string> CandidateSet::ids_within(std::size_t k) const {
  std::vector<std::string> out;
  for (const auto& c : candidates) {
    if (within(c, k)) out.push_back(c.entity_id);
  }
  return out;
}

std::vector<std::string> CandidateSet::ids() const {
  std::vector<std::string> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) out.push_back(c.entity_id);
  return out;
}

const Candidate* CandidateSet::find(std::string_view entity_id) const {
  for (const auto& c : candidates) {
    if (c.entity_id == entity_id) return &c;
  }
  return nullptr;
}

namespace {

[[noreturn]] void missing(Method m) {
  fail(ErrorCode::kInvalidArgument,
       "missing backend for method " + std::string(to_string(m)));
}

}  // namespace

CandidateSet retrieve(Method method, std::string_view tweet_text,
                      const SpanAnnotation& span, const Backends& backends,
                      std::size_t k) {
  // Validates offsets and surface for every method, not just dense.
  const MentionInput mention = build_mention_input(tweet_text, span);

  CandidateSet out;
  out.tweet_id = span.tweet_id;
  out.span = span;
  std::vector<ScoredCandidate> ranked;
  switch (method) {
    case Method::kDense: {
      if (backends.dense_index == nullptr || backends.mention_provider == nullptr) missing(method);
      const std::string key = mention_key(span);
      const std::string rendered = mention.render();
      const Vector query = backends.mention_provider->embed({key, rendered});
      ranked = backends.dense_index->search(query.values, k);
      out.method_config[method] = {false, k};
      break;
    }
    case Method::kBm25:
      if (backends.bm25_index == nullptr) missing(method);
      ranked = backends.bm25_index->search(span.surface, k);
      out.method_config[method] = {false, k};
      break;
    case Method::kLookup:
      if (backends.alias_table == nullptr) missing(method);
      ranked = lookup_candidates(*backends.alias_table, span.surface);
      out.method_config[method] = {true, 0};
      break;
  }
  out.candidates.reserve(ranked.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    Candidate c;
    c.entity_id = std::move(ranked[i].id);
    c.scores[method] = ranked[i].score;
    c.ranks[method] = i;
    out.candidates.push_back(std::move(c));
  }
  return out;
}

CandidateSet hybrid_union(const CandidateSet& a, const CandidateSet& b) {
  if (a.tweet_id != b.tweet_id || a.span.start != b.span.start ||
      a.span.end != b.span.end) {
    fail(ErrorCode::kInvalidArgument,
         "hybrid_union of candidate sets for different spans (" + a.tweet_id +
             " vs " + b.tweet_id + ")");
  }
  CandidateSet out = a;
  for (const auto& [m, limit] : b.method_config) out.method_config.insert_or_assign(m, limit);
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < out.candidates.size(); ++i) {
    position.emplace(out.candidates[i].entity_id, i);
  }
  for (const auto& c : b.candidates) {
    auto it = position.find(c.entity_id);
    if (it == position.end()) {
      position.emplace(c.entity_id, out.candidates.size());
      out.candidates.push_back(c);
      continue;
    }
    Candidate& merged = out.candidates[it->second];
    for (const auto& [m, s] : c.scores) merged.scores.insert_or_assign(m, s);
    for (const auto& [m, r] : c.ranks) merged.ranks.insert_or_assign(m, r);
  }
  return out;
}

void write_candidates_jsonl(std::ostream& out, std::span<const CandidateSet> sets) {
  for (const auto& set : sets) {
    json cands = json::array();
    for (const auto& c : set.candidates) {
      json methods = json::array();
      json scores = json::object();
      json ranks = json::object();
      for (const auto& [m, s] : c.scores) {
        methods.push_back(to_string(m));
        scores[std::string(to_string(m))] = s;
      }
      for (const auto& [m, r] : c.ranks) ranks[std::string(to_string(m))] = r;
      cands.push_back({{"id", c.entity_id}, {"methods", methods}, {"scores", scores}, {"ranks", ranks}});
    }
    json limits = json::object();
    for (const auto& [m, l] : set.method_config) {
      limits[std::string(to_string(m))] = l.all ? json("all") : json(l.k);
    }
    json rec = {{"tweet_id", set.tweet_id},
                {"start", set.span.start},
                {"end", set.span.end},
                {"surface", set.span.surface},
                {"source", to_string(set.span.source)},
                {"method_config", limits},
                {"candidates", cands}};
    out << rec.dump() << '\n';
  }
}

std::vector<CandidateSet> read_candidates_jsonl(std::istream& in) {
  std::vector<CandidateSet> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    try {
      const json rec = json::parse(raw);
      CandidateSet set;
      set.tweet_id = rec.at("tweet_id").get<std::string>();
      set.span.tweet_id = set.tweet_id;
      set.span.start = rec.at("start").get<std::size_t>();
      set.span.end = rec.at("end").get<std::size_t>();
      set.span.surface = rec.value("surface", std::string());
      set.span.source = parse_span_source(rec.value("source", std::string("gold")));
      if (auto it = rec.find("method_config"); it != rec.end()) {
        for (const auto& [name, v] : it->items()) {
          MethodLimit l;
          if (v.is_string()) {
            if (v.get<std::string>() != "all") fail(ErrorCode::kParse, "method limit must be 'all' or a number");
            l.all = true;
            l.k = 0;
          } else {
            l.k = v.get<std::size_t>();
          }
          set.method_config[parse_method(name)] = l;
        }
      }
      for (const auto& c : rec.at("candidates")) {
        Candidate cand;
        cand.entity_id = c.at("id").get<std::string>();
        for (const auto& [name, v] : c.at("scores").items()) {
          cand.scores[parse_method(name)] = v.get<double>();
        }
        if (auto it = c.find("ranks"); it != c.end()) {
          for (const auto& [name, v] : it->items()) {
            cand.ranks[parse_method(name)] = v.get<std::size_t>();
          }
        }
        if (cand.scores.empty()) {
          fail(ErrorCode::kParse, "candidate " + cand.entity_id + " has no provenance");
        }
        set.candidates.push_back(std::move(cand));
      }
      out.push_back(std::move(set));
    } catch (const json::exception& e) {
      fail(ErrorCode::kParse, "candidates line " + std::to_string(line) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace elcand
