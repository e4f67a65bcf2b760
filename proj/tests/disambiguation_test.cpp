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

#include <cmath>
#include <sstream>

#include <doctest.h>

#include "elcand/disambiguation.hpp"
#include "error_code.hpp"
#include "fixtures.hpp"

using namespace elcand;
using elcand::testing::error_code;

namespace {

double f1_of(const RankerModel& model, const std::vector<LabeledSpan>& spans) {
  std::vector<std::optional<std::string>> pred;
  for (const auto& s : spans) pred.push_back(disambiguate(model, s.candidate_ids, s.features));
  return span_f1(spans, pred);
}

}  // namespace

TEST_CASE("feature extraction") {
  const EntityStore store({{"Q1", "Paris", "Paris is the capital of France.", "capital", {}, {}, 0.75, 99},
                           {"Q2", "Paris Hilton", "A media personality.", "person", {"Paris"}, {}, 0.25, 0}});
  const AliasTable aliases = build_alias_table(store, std::vector<AliasCount>{{"paris", "Q1", 3}, {"Paris", "Q2", 1}});
  const ReferenceHashEmbedder embedder(64);
  FeatureBackends fb{&store, &aliases, &embedder, DescriptionMode::kLong, 10};
  const std::string tweet = "PARIS is the capital";
  const SpanAnnotation span{"t", 0, 5, "PARIS", {}, SpanSource::kGold};

  const FeatureVector f1 = extract_features(tweet, span, "Q1", std::size_t{0}, fb);
  CHECK(f1.log_mention_count == std::log(4.0));
  CHECK(f1.cond_prob == 0.75);
  CHECK(f1.pagerank == 0.75);
  CHECK(f1.log_link_count == std::log(100.0));
  CHECK(f1.dense_rank_inv == 1.0);
  CHECK(f1.exact_title_match == 1.0);
  const Vector m = embed_mention(embedder, tweet, span);
  const Vector e = embed_entity(embedder, store.at("Q1"), DescriptionMode::kLong);
  CHECK(f1.context_sim == dot(m.values, e.values));

  const FeatureVector f2 = extract_features(tweet, span, "Q2", std::nullopt, fb);
  CHECK(f2.cond_prob == 0.25);
  CHECK(f2.dense_rank_inv == 0.0);
  CHECK(f2.exact_title_match == 0.0);
  CHECK(f2.log_link_count == 0.0);
  CHECK(f1.context_sim > f2.context_sim);

  CHECK(error_code([&] { extract_features(tweet, span, "Q9", std::nullopt, fb); }) ==
        ErrorCode::kNotFound);
  FeatureBackends bare{&store, nullptr, nullptr, DescriptionMode::kLong, 10};
  const FeatureVector f3 = extract_features(tweet, span, "Q1", std::nullopt, bare);
  CHECK(f3.cond_prob == 0.0);
  CHECK(f3.context_sim == 0.0);
}

TEST_CASE("model files round trip exactly") {
  RankerModel m;
  m.weights = {0.1, -2.5, 1.0 / 3.0, 1e-300, 7.0, -0.0, 123456.789};
  m.bias = -0.7;
  m.nil_threshold = 0.123456789012345678;
  std::stringstream buf;
  m.write(buf);
  std::istringstream in(buf.str());
  CHECK(RankerModel::read(in) == m);
  RankerModel disabled;
  std::stringstream buf2;
  disabled.write(buf2);
  std::istringstream in2(buf2.str());
  CHECK(RankerModel::read(in2) == disabled);
  std::istringstream bad("cond_prob abc\n");
  CHECK(error_code([&] { RankerModel::read(bad); }) == ErrorCode::kParse);
  std::istringstream unknown("mystery 1\n");
  CHECK(error_code([&] { RankerModel::read(unknown); }) == ErrorCode::kParse);
}

TEST_CASE("disambiguation picks the argmax and applies the threshold") {
  RankerModel m;
  m.weights[1] = 1.0;  // cond_prob
  const std::vector<std::string> ids = {"b", "a", "c"};
  std::vector<FeatureVector> f(3);
  f[0].cond_prob = 0.4;
  f[1].cond_prob = 0.4;
  f[2].cond_prob = 0.2;
  CHECK(disambiguate(m, ids, f) == std::optional<std::string>("a"));
  m.nil_threshold = 0.5;
  CHECK_FALSE(disambiguate(m, ids, f).has_value());
  CHECK_FALSE(disambiguate(m, std::span<const std::string>{}, std::span<const FeatureVector>{}).has_value());
  CHECK(prior_baseline(ids, f) == std::optional<std::string>("a"));
}

TEST_CASE("training is deterministic and the loss never rises") {
  const auto spans = fixtures::separable_spans(3, 300);
  const TrainResult a = train_ranker(spans);
  const TrainResult b = train_ranker(spans);
  CHECK(a.model == b.model);
  CHECK(a.loss_history == b.loss_history);
  REQUIRE(a.loss_history.size() == 201);
  for (std::size_t i = 1; i < a.loss_history.size(); ++i) {
    CHECK(a.loss_history[i] <= a.loss_history[i - 1]);
  }
  CHECK(a.loss_history.back() < a.loss_history.front());
  CHECK(a.holdout_spans == 30);
  CHECK(a.train_spans == 270);
  CHECK_FALSE(a.degenerate);
  TrainOptions other;
  other.seed = 99;
  CHECK_FALSE(train_ranker(spans, other).model == a.model);
}

TEST_CASE("separable training beats the prior baseline") {
  const auto train = fixtures::separable_spans(5, 400);
  const auto test = fixtures::separable_spans(6, 200);
  const TrainResult r = train_ranker(train);
  CHECK(r.holdout_f1 >= 0.95);
  const double model_f1 = f1_of(r.model, test);
  std::vector<std::optional<std::string>> prior;
  for (const auto& s : test) prior.push_back(prior_baseline(s.candidate_ids, s.features));
  CHECK(model_f1 >= 0.95);
  CHECK(model_f1 > span_f1(test, prior));
}

TEST_CASE("training input validation and degenerate data") {
  CHECK(error_code([] { train_ranker(std::vector<LabeledSpan>{}); }) == ErrorCode::kInvalidArgument);
  LabeledSpan empty;
  empty.gold = "x";
  CHECK(error_code([&] { train_ranker(std::vector<LabeledSpan>{empty}); }) ==
        ErrorCode::kInvalidArgument);
  // Every candidate negative: one class only.
  LabeledSpan nil;
  nil.candidate_ids = {"a", "b"};
  nil.features.resize(2);
  const TrainResult r = train_ranker(std::vector<LabeledSpan>(5, nil));
  CHECK(r.degenerate);
  CHECK_FALSE(r.diagnostic.empty());
}
