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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elcand/encoding.hpp"
#include "elcand/kb_store.hpp"
#include "elcand/retrieval.hpp"
#include "elcand/sparse.hpp"

namespace elcand {

inline constexpr std::size_t kFeatureCount = 7;

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "log_mention_count", "cond_prob",      "pagerank",         "log_link_count",
    "context_sim",       "dense_rank_inv", "exact_title_match"};

/// Mention-entity features for one candidate.
struct FeatureVector {
  double log_mention_count = 0.0;  // ln(1 + alias count for surface/entity)
  double cond_prob = 0.0;          // p(entity | surface), 0 when absent
  double pagerank = 0.0;
  double log_link_count = 0.0;     // ln(1 + link_count)
  double context_sim = 0.0;        // mention . entity-description embedding
  double dense_rank_inv = 0.0;     // 1 / (1 + dense rank), 0 when absent
  double exact_title_match = 0.0;  // normalized title == normalized surface

  std::array<double, kFeatureCount> as_array() const {
    return {log_mention_count, cond_prob,      pagerank,         log_link_count,
            context_sim,       dense_rank_inv, exact_title_match};
  }
  bool operator==(const FeatureVector&) const = default;
};

struct FeatureBackends {
  const EntityStore* store = nullptr;
  const AliasTable* alias_table = nullptr;       // optional
  const EmbeddingProvider* provider = nullptr;   // optional; context_sim 0 without it
  DescriptionMode description_mode = DescriptionMode::kLong;
  std::size_t max_sentences = kDefaultMaxSentences;
};

/// Throws kNotFound for a candidate missing from the store.
FeatureVector extract_features(std::string_view tweet_text, const SpanAnnotation& span,
                               std::string_view candidate_id,
                               std::optional<std::size_t> dense_rank,
                               const FeatureBackends& backends);

/// Same as above with the mention embedding computed once by the caller.
FeatureVector extract_features(const Vector* mention_embedding, const SpanAnnotation& span,
                               std::string_view candidate_id,
                               std::optional<std::size_t> dense_rank,
                               const FeatureBackends& backends);

struct RankerModel {
  std::array<double, kFeatureCount> weights{};
  double bias = 0.0;
  /// Best scores below this mean NIL. lowest() disables NIL prediction.
  double nil_threshold = std::numeric_limits<double>::lowest();

  double score(const FeatureVector& f) const;

  /// One "name value" pair per line, weights then bias and nil_threshold,
  /// values printed with 17 significant digits.
  void write(std::ostream& out) const;
  static RankerModel read(std::istream& in);
  void save(const std::filesystem::path& path) const;
  static RankerModel load(const std::filesystem::path& path);

  bool operator==(const RankerModel&) const = default;
};

/// A span's retrieved candidates with their features and the gold answer
/// (nullopt for NIL). The gold may be absent from the candidates.
struct LabeledSpan {
  std::vector<std::string> candidate_ids;
  std::vector<FeatureVector> features;
  std::optional<std::string> gold;
};

struct TrainOptions {
  double learning_rate = 0.5;
  std::size_t epochs = 200;
  std::uint64_t seed = 13;
  double holdout_fraction = 0.1;
};

struct TrainResult {
  RankerModel model;
  /// Mean logistic loss on the training pairs, before training and after
  /// each epoch.
  std::vector<double> loss_history;
  /// Set when the training pairs are all one class; the model is still
  /// returned.
  bool degenerate = false;
  std::string diagnostic;
  std::size_t train_spans = 0;
  std::size_t holdout_spans = 0;
  double holdout_f1 = 0.0;
};

/// Full-batch gradient descent on logistic loss over (candidate, is-gold)
/// pairs, starting from zero weights. A step that would raise the loss is
/// retried at half the rate. The NIL threshold is fitted on a seeded
/// held-out fraction of spans to maximize F1 there.
TrainResult train_ranker(std::span<const LabeledSpan> spans, const TrainOptions& options = {});

/// Argmax of the linear score with ascending-id tie-break; NIL when there are
/// no candidates or the best score is below the threshold.
std::optional<std::string> disambiguate(const RankerModel& model,
                                        std::span<const std::string> candidate_ids,
                                        std::span<const FeatureVector> features);

std::optional<std::string> disambiguate(const RankerModel& model, std::string_view tweet_text,
                                        const CandidateSet& candidates,
                                        const FeatureBackends& backends);

/// Highest cond_prob with ascending-id tie-break; NIL only for empty input.
std::optional<std::string> prior_baseline(std::span<const std::string> candidate_ids,
                                          std::span<const FeatureVector> features);

/// Micro F1 of predictions against LabeledSpan golds.
double span_f1(std::span<const LabeledSpan> spans,
               std::span<const std::optional<std::string>> predictions);

}  // namespace elcand
