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

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "elcand/encoding.hpp"
#include "elcand/retrieval.hpp"

namespace elcand {

enum class Split { kAcademic, kOod, kTrain };

std::string_view to_string(Split split);
Split parse_split(std::string_view s);

struct Tweet {
  std::string id;
  std::string text;
  Split split = Split::kTrain;
  std::vector<SpanAnnotation> spans;
};

struct Dataset {
  std::vector<Tweet> tweets;

  const Tweet* find(std::string_view tweet_id) const;
  std::size_t span_count() const;
};

/// One JSON object per line: tweet_id, text, split, spans. Every span is
/// checked against its tweet text; errors name the line.
Dataset read_dataset(std::istream& in);
Dataset load_dataset(const std::filesystem::path& path);
void write_dataset(std::ostream& out, const Dataset& dataset);

/// Builds a dataset from TweetNERD-style TSV rows (tweet id, phrase, start,
/// end, entity id, optional extra columns) plus a tweet_id<TAB>text file.
/// Rows for the same span merge their entity ids; empty or sentinel ids
/// (NOT FOUND, AMBIGUOUS, NIL, -1, 0) become NIL. A header row is skipped.
Dataset convert_tweetnerd(std::istream& annotations, std::istream& texts, Split split);

struct SpanKey {
  std::string tweet_id;
  std::size_t start = 0;
  std::size_t end = 0;

  auto operator<=>(const SpanKey&) const = default;
};

SpanKey key_of(const SpanAnnotation& span);

enum class EvalMode { kSpanAligned, kTweetLevel };

std::string_view to_string(EvalMode mode);
EvalMode parse_eval_mode(std::string_view s);

struct GoldInstance {
  std::string tweet_id;
  std::optional<SpanKey> span;  // set in span-aligned mode
  std::vector<std::string> gold_ids;  // hit if any is retrieved
  Split split = Split::kTrain;
};

/// Span-aligned: one instance per gold-source span with a non-empty gold
/// list. Tweet-level: one instance per distinct gold id of a tweet's gold
/// spans. NIL spans never become instances.
std::vector<GoldInstance> gold_instances(const Dataset& dataset, EvalMode mode,
                                         std::span<const Split> splits);

/// Per-instance hit flags at cutoff k.
std::vector<bool> hit_flags(std::span<const CandidateSet> sets,
                            std::span<const GoldInstance> instances, std::size_t k,
                            EvalMode mode);

/// Split name -> recall, plus "overall" pooled over academic and ood (or over
/// everything when neither is present). Splits without instances are absent.
using SplitRecall = std::map<std::string, double>;

SplitRecall recall_at_k(std::span<const CandidateSet> sets,
                        std::span<const GoldInstance> instances, std::size_t k,
                        EvalMode mode);

SplitRecall recall_from_hits(std::span<const GoldInstance> instances,
                             const std::vector<bool>& hits);

struct CurvePoint {
  std::size_t k = 0;
  double recall = 0.0;  // overall
};

std::vector<CurvePoint> recall_curve(std::span<const CandidateSet> sets,
                                     std::span<const GoldInstance> instances,
                                     std::span<const std::size_t> ks, EvalMode mode);

/// Named hit flags over one shared instance list.
using MethodHits = std::vector<std::pair<std::string, std::vector<bool>>>;

enum class UniqueDefinition { kExclusive, kTotal };

std::map<std::string, std::size_t> unique_correct(const MethodHits& hits,
                                                  UniqueDefinition definition);

struct OverlapRow {
  std::vector<bool> pattern;  // one flag per method, same order as MethodHits
  std::size_t count = 0;
  double proportion = 0.0;
};

/// All 2^m presence patterns, all-Y first, in the order Y < N per column.
std::vector<OverlapRow> overlap_table(const MethodHits& hits);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

/// Micro P/R/F1 over the gold span universe. A prediction is a true positive
/// when it names one of the span's gold ids; NIL predictions are never
/// positives; a non-NIL prediction on a NIL span is a false positive.
Prf f1_score(const std::map<SpanKey, std::optional<std::string>>& predicted,
             const std::map<SpanKey, std::vector<std::string>>& gold);

}  // namespace elcand
