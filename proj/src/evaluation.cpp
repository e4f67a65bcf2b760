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

#include "elcand/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "elcand/error.hpp"

namespace elcand {

using nlohmann::json;

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kAcademic:
      return "academic";
    case Split::kOod:
      return "ood";
    case Split::kTrain:
      return "train";
  }
  return "unknown";
}

Split parse_split(std::string_view s) {
  if (s == "academic") return Split::kAcademic;
  if (s == "ood") return Split::kOod;
  if (s == "train") return Split::kTrain;
  fail(ErrorCode::kInvalidArgument,
       "unknown split label '" + std::string(s) + "' (expected academic, ood or train)");
}

std::string_view to_string(EvalMode mode) {
  return mode == EvalMode::kSpanAligned ? "span_aligned" : "tweet_level";
}

EvalMode parse_eval_mode(std::string_view s) {
  if (s == "span_aligned") return EvalMode::kSpanAligned;
  if (s == "tweet_level") return EvalMode::kTweetLevel;
  fail(ErrorCode::kInvalidArgument,
       "eval mode must be 'span_aligned' or 'tweet_level', got '" + std::string(s) + "'");
}

const Tweet* Dataset::find(std::string_view tweet_id) const {
  for (const auto& t : tweets) {
    if (t.id == tweet_id) return &t;
  }
  return nullptr;
}

std::size_t Dataset::span_count() const {
  std::size_t n = 0;
  for (const auto& t : tweets) n += t.spans.size();
  return n;
}

Dataset read_dataset(std::istream& in) {
  Dataset ds;
  std::set<std::string> seen;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    const std::string where = "dataset line " + std::to_string(line) + ": ";
    try {
      const json rec = json::parse(raw);
      Tweet t;
      t.id = rec.at("tweet_id").get<std::string>();
      t.text = rec.at("text").get<std::string>();
      t.split = parse_split(rec.at("split").get<std::string>());
      if (t.id.empty()) fail(ErrorCode::kParse, where + "empty tweet_id");
      if (!seen.insert(t.id).second) {
        fail(ErrorCode::kDuplicate, where + "duplicate tweet_id " + t.id);
      }
      for (const auto& s : rec.value("spans", json::array())) {
        SpanAnnotation span;
        span.tweet_id = t.id;
        span.start = s.at("start").get<std::size_t>();
        span.end = s.at("end").get<std::size_t>();
        span.surface = s.at("surface").get<std::string>();
        span.gold_ids = s.value("gold_ids", std::vector<std::string>{});
        span.source = parse_span_source(s.value("source", std::string("gold")));
        build_mention_input(t.text, span);
        t.spans.push_back(std::move(span));
      }
      ds.tweets.push_back(std::move(t));
    } catch (const json::exception& e) {
      fail(ErrorCode::kParse, where + e.what());
    } catch (const Error& e) {
      const std::string msg = e.what();
      fail(e.code() == ErrorCode::kInvalidArgument ? ErrorCode::kParse : e.code(),
           msg.rfind("dataset line", 0) == 0 ? msg : where + msg);
    }
  }
  return ds;
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open dataset file " + path.string());
  return read_dataset(in);
}

void write_dataset(std::ostream& out, const Dataset& dataset) {
  for (const auto& t : dataset.tweets) {
    json spans = json::array();
    for (const auto& s : t.spans) {
      spans.push_back({{"start", s.start},
                       {"end", s.end},
                       {"surface", s.surface},
                       {"gold_ids", s.gold_ids},
                       {"source", to_string(s.source)}});
    }
    json rec = {{"tweet_id", t.id}, {"text", t.text}, {"split", to_string(t.split)}, {"spans", spans}};
    out << rec.dump() << '\n';
  }
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t pos = 0;
  while (true) {
    const auto tab = line.find('\t', pos);
    cols.push_back(line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos));
    if (tab == std::string::npos) break;
    pos = tab + 1;
  }
  return cols;
}

bool parse_size(const std::string& s, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool is_sentinel(const std::string& id) {
  static const std::set<std::string> kSentinels = {"", "NOT FOUND", "AMBIGUOUS", "NIL", "-1", "0"};
  return kSentinels.count(id) > 0;
}

}  // namespace

Dataset convert_tweetnerd(std::istream& annotations, std::istream& texts, Split split) {
  std::unordered_map<std::string, std::string> text_of;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(texts, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;
    const auto tab = raw.find('\t');
    if (tab == std::string::npos) {
      fail(ErrorCode::kParse, "tweet texts line " + std::to_string(line) + ": expected id<TAB>text");
    }
    text_of[raw.substr(0, tab)] = raw.substr(tab + 1);
  }

  Dataset ds;
  std::unordered_map<std::string, std::size_t> tweet_pos;
  line = 0;
  while (std::getline(annotations, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;
    const auto cols = split_tabs(raw);
    const std::string where = "annotations line " + std::to_string(line) + ": ";
    if (cols.size() < 5) fail(ErrorCode::kParse, where + "expected at least 5 columns");
    SpanAnnotation span;
    if (!parse_size(cols[2], span.start) || !parse_size(cols[3], span.end)) {
      if (line == 1) continue;  // header
      fail(ErrorCode::kParse, where + "start/end must be non-negative integers");
    }
    span.tweet_id = cols[0];
    span.surface = cols[1];
    span.source = SpanSource::kGold;
    auto text_it = text_of.find(span.tweet_id);
    if (text_it == text_of.end()) {
      fail(ErrorCode::kNotFound, where + "no text for tweet " + span.tweet_id);
    }
    auto [pos_it, inserted] = tweet_pos.emplace(span.tweet_id, ds.tweets.size());
    if (inserted) ds.tweets.push_back({span.tweet_id, text_it->second, split, {}});
    Tweet& tweet = ds.tweets[pos_it->second];
    try {
      build_mention_input(tweet.text, span);
    } catch (const Error& e) {
      fail(ErrorCode::kParse, where + e.what());
    }
    const std::string& entity = cols[4];
    auto same = std::find_if(tweet.spans.begin(), tweet.spans.end(), [&](const SpanAnnotation& s) {
      return s.start == span.start && s.end == span.end;
    });
    if (same == tweet.spans.end()) {
      if (!is_sentinel(entity)) span.gold_ids.push_back(entity);
      tweet.spans.push_back(std::move(span));
    } else if (!is_sentinel(entity) &&
               std::find(same->gold_ids.begin(), same->gold_ids.end(), entity) == same->gold_ids.end()) {
      same->gold_ids.push_back(entity);
    }
  }
  return ds;
}

SpanKey key_of(const SpanAnnotation& span) { return {span.tweet_id, span.start, span.end}; }

std::vector<GoldInstance> gold_instances(const Dataset& dataset, EvalMode mode,
                                         std::span<const Split> splits) {
  std::vector<GoldInstance> out;
  for (const auto& t : dataset.tweets) {
    if (std::find(splits.begin(), splits.end(), t.split) == splits.end()) continue;
    if (mode == EvalMode::kSpanAligned) {
      for (const auto& s : t.spans) {
        if (s.source != SpanSource::kGold || s.gold_ids.empty()) continue;
        out.push_back({t.id, key_of(s), s.gold_ids, t.split});
      }
    } else {
      std::set<std::string> golds;
      for (const auto& s : t.spans) {
        if (s.source == SpanSource::kGold) golds.insert(s.gold_ids.begin(), s.gold_ids.end());
      }
      for (const auto& g : golds) out.push_back({t.id, std::nullopt, {g}, t.split});
    }
  }
  return out;
}

std::vector<bool> hit_flags(std::span<const CandidateSet> sets,
                            std::span<const GoldInstance> instances, std::size_t k,
                            EvalMode mode) {
  if (k < 1) fail(ErrorCode::kInvalidArgument, "recall cutoff k must be at least 1");
  std::map<SpanKey, std::set<std::string>> by_span;
  std::map<std::string, std::set<std::string>> by_tweet;
  for (const auto& set : sets) {
    for (auto& id : set.ids_within(k)) {
      if (mode == EvalMode::kSpanAligned) {
        by_span[key_of(set.span)].insert(id);
      } else {
        by_tweet[set.tweet_id].insert(std::move(id));
      }
    }
  }
  std::vector<bool> hits;
  hits.reserve(instances.size());
  for (const auto& inst : instances) {
    const std::set<std::string>* pool = nullptr;
    if (mode == EvalMode::kSpanAligned) {
      if (!inst.span) {
        fail(ErrorCode::kInvalidArgument, "span-aligned evaluation needs span-level instances");
      }
      auto it = by_span.find(*inst.span);
      if (it != by_span.end()) pool = &it->second;
    } else {
      auto it = by_tweet.find(inst.tweet_id);
      if (it != by_tweet.end()) pool = &it->second;
    }
    bool hit = false;
    if (pool != nullptr) {
      for (const auto& g : inst.gold_ids) hit = hit || pool->count(g) > 0;
    }
    hits.push_back(hit);
  }
  return hits;
}

SplitRecall recall_from_hits(std::span<const GoldInstance> instances,
                             const std::vector<bool>& hits) {
  std::map<Split, std::pair<std::size_t, std::size_t>> tally;  // hits, total
  for (std::size_t i = 0; i < instances.size(); ++i) {
    auto& [h, n] = tally[instances[i].split];
    h += hits[i] ? 1 : 0;
    ++n;
  }
  SplitRecall out;
  std::size_t pooled_hits = 0;
  std::size_t pooled_total = 0;
  const bool has_eval = tally.count(Split::kAcademic) > 0 || tally.count(Split::kOod) > 0;
  for (const auto& [split, counts] : tally) {
    out[std::string(to_string(split))] =
        static_cast<double>(counts.first) / static_cast<double>(counts.second);
    if (!has_eval || split != Split::kTrain) {
      pooled_hits += counts.first;
      pooled_total += counts.second;
    }
  }
  if (pooled_total > 0) {
    out["overall"] = static_cast<double>(pooled_hits) / static_cast<double>(pooled_total);
  }
  return out;
}

SplitRecall recall_at_k(std::span<const CandidateSet> sets,
                        std::span<const GoldInstance> instances, std::size_t k,
                        EvalMode mode) {
  return recall_from_hits(instances, hit_flags(sets, instances, k, mode));
}

std::vector<CurvePoint> recall_curve(std::span<const CandidateSet> sets,
                                     std::span<const GoldInstance> instances,
                                     std::span<const std::size_t> ks, EvalMode mode) {
  std::vector<CurvePoint> out;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (i > 0 && ks[i] <= ks[i - 1]) {
      fail(ErrorCode::kInvalidArgument, "recall curve cutoffs must be strictly ascending");
    }
    const auto recall = recall_at_k(sets, instances, ks[i], mode);
    auto it = recall.find("overall");
    out.push_back({ks[i], it == recall.end() ? 0.0 : it->second});
  }
  return out;
}

std::map<std::string, std::size_t> unique_correct(const MethodHits& hits,
                                                  UniqueDefinition definition) {
  std::map<std::string, std::size_t> out;
  const std::size_t n = hits.empty() ? 0 : hits.front().second.size();
  for (const auto& [name, flags] : hits) {
    if (flags.size() != n) {
      fail(ErrorCode::kInvalidArgument, "hit sets must cover the same instances");
    }
  }
  for (std::size_t m = 0; m < hits.size(); ++m) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!hits[m].second[i]) continue;
      bool others = false;
      if (definition == UniqueDefinition::kExclusive) {
        for (std::size_t o = 0; o < hits.size(); ++o) {
          if (o != m && hits[o].second[i]) others = true;
        }
      }
      if (!others) ++count;
    }
    out[hits[m].first] = count;
  }
  return out;
}

std::vector<OverlapRow> overlap_table(const MethodHits& hits) {
  const std::size_t m = hits.size();
  const std::size_t n = m == 0 ? 0 : hits.front().second.size();
  const std::size_t rows = std::size_t{1} << m;
  std::vector<OverlapRow> out(rows);
  // Row r: bit (m-1-j) of r set means method j is N, so row 0 is all-Y.
  for (std::size_t r = 0; r < rows; ++r) {
    out[r].pattern.resize(m);
    for (std::size_t j = 0; j < m; ++j) out[r].pattern[j] = ((r >> (m - 1 - j)) & 1) == 0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (hits[j].second.size() != n) {
        fail(ErrorCode::kInvalidArgument, "hit sets must cover the same instances");
      }
      if (!hits[j].second[i]) r |= std::size_t{1} << (m - 1 - j);
    }
    ++out[r].count;
  }
  for (auto& row : out) {
    row.proportion = n == 0 ? 0.0 : static_cast<double>(row.count) / static_cast<double>(n);
  }
  return out;
}

Prf f1_score(const std::map<SpanKey, std::optional<std::string>>& predicted,
             const std::map<SpanKey, std::vector<std::string>>& gold) {
  Prf out;
  for (const auto& [key, golds] : gold) {
    auto it = predicted.find(key);
    const bool has_pred = it != predicted.end() && it->second.has_value();
    const bool correct =
        has_pred && std::find(golds.begin(), golds.end(), *it->second) != golds.end();
    if (correct) {
      ++out.tp;
    } else {
      if (has_pred) ++out.fp;
      if (!golds.empty()) ++out.fn;
    }
  }
  out.precision = out.tp + out.fp == 0 ? 0.0 : static_cast<double>(out.tp) / static_cast<double>(out.tp + out.fp);
  out.recall = out.tp + out.fn == 0 ? 0.0 : static_cast<double>(out.tp) / static_cast<double>(out.tp + out.fn);
  out.f1 = out.precision + out.recall == 0.0
               ? 0.0
               : 2.0 * out.precision * out.recall / (out.precision + out.recall);
  return out;
}

}  // namespace elcand
