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

#include "elcand/disambiguation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "elcand/error.hpp"
#include "elcand/file_util.hpp"
#include "elcand/normalize.hpp"
#include "elcand/random.hpp"

namespace elcand {

FeatureVector extract_features(const Vector* mention_embedding, const SpanAnnotation& span,
                               std::string_view candidate_id,
                               std::optional<std::size_t> dense_rank,
                               const FeatureBackends& backends) {
  if (backends.store == nullptr) {
    fail(ErrorCode::kInvalidArgument, "feature extraction needs an entity store");
  }
  const Entity& entity = backends.store->at(candidate_id);
  const NormalizationConfig config =
      backends.alias_table != nullptr ? backends.alias_table->config() : NormalizationConfig{};
  const std::string surface = normalize_surface(span.surface, config);

  FeatureVector f;
  if (backends.alias_table != nullptr) {
    if (const AliasEntry* e = backends.alias_table->find(surface, candidate_id)) {
      f.log_mention_count = std::log1p(static_cast<double>(e->count));
      f.cond_prob = e->prob;
    }
  }
  f.pagerank = entity.pagerank;
  f.log_link_count = std::log1p(static_cast<double>(entity.link_count));
  if (backends.provider != nullptr && mention_embedding != nullptr) {
    const Vector ev = embed_entity(*backends.provider, entity, backends.description_mode,
                                   backends.max_sentences);
    f.context_sim = dot(mention_embedding->values, ev.values);
  }
  if (dense_rank) f.dense_rank_inv = 1.0 / (1.0 + static_cast<double>(*dense_rank));
  f.exact_title_match = normalize_surface(entity.title, config) == surface ? 1.0 : 0.0;
  return f;
}

FeatureVector extract_features(std::string_view tweet_text, const SpanAnnotation& span,
                               std::string_view candidate_id,
                               std::optional<std::size_t> dense_rank,
                               const FeatureBackends& backends) {
  std::optional<Vector> mention;
  if (backends.provider != nullptr) mention = embed_mention(*backends.provider, tweet_text, span);
  else build_mention_input(tweet_text, span);
  return extract_features(mention ? &*mention : nullptr, span, candidate_id, dense_rank, backends);
}

double RankerModel::score(const FeatureVector& f) const {
  const auto x = f.as_array();
  double s = bias;
  for (std::size_t i = 0; i < kFeatureCount; ++i) s += weights[i] * x[i];
  return s;
}

namespace {

std::string format17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void RankerModel::write(std::ostream& out) const {
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    out << kFeatureNames[i] << ' ' << format17(weights[i]) << '\n';
  }
  out << "bias " << format17(bias) << '\n';
  out << "nil_threshold " << format17(nil_threshold) << '\n';
}

RankerModel RankerModel::read(std::istream& in) {
  RankerModel model;
  std::map<std::string, double> values;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream fields(raw);
    std::string name;
    std::string value;
    fields >> name >> value;
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size()) {
      fail(ErrorCode::kParse, "model line " + std::to_string(line) + ": bad value '" + value + "'");
    }
    values[name] = v;
  }
  auto take = [&](std::string_view name) {
    auto it = values.find(std::string(name));
    if (it == values.end()) {
      fail(ErrorCode::kParse, "model file is missing '" + std::string(name) + "'");
    }
    return it->second;
  };
  for (std::size_t i = 0; i < kFeatureCount; ++i) model.weights[i] = take(kFeatureNames[i]);
  model.bias = take("bias");
  model.nil_threshold = take("nil_threshold");
  return model;
}

void RankerModel::save(const std::filesystem::path& path) const {
  write_file_atomic(path, [&](std::ostream& out) { write(out); });
}

RankerModel RankerModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open model file " + path.string());
  return read(in);
}

std::optional<std::string> disambiguate(const RankerModel& model,
                                        std::span<const std::string> candidate_ids,
                                        std::span<const FeatureVector> features) {
  if (candidate_ids.size() != features.size()) {
    fail(ErrorCode::kInvalidArgument, "candidate ids and features differ in length");
  }
  if (candidate_ids.empty()) return std::nullopt;
  std::size_t best = 0;
  double best_score = model.score(features[0]);
  for (std::size_t i = 1; i < candidate_ids.size(); ++i) {
    const double s = model.score(features[i]);
    if (s > best_score || (s == best_score && candidate_ids[i] < candidate_ids[best])) {
      best = i;
      best_score = s;
    }
  }
  if (best_score < model.nil_threshold) return std::nullopt;
  return candidate_ids[best];
}

std::optional<std::string> disambiguate(const RankerModel& model, std::string_view tweet_text,
                                        const CandidateSet& candidates,
                                        const FeatureBackends& backends) {
  if (candidates.candidates.empty()) return std::nullopt;
  std::optional<Vector> mention;
  if (backends.provider != nullptr) {
    mention = embed_mention(*backends.provider, tweet_text, candidates.span);
  }
  std::vector<std::string> ids;
  std::vector<FeatureVector> features;
  for (const auto& c : candidates.candidates) {
    std::optional<std::size_t> rank;
    if (auto it = c.ranks.find(Method::kDense); it != c.ranks.end()) rank = it->second;
    ids.push_back(c.entity_id);
    features.push_back(extract_features(mention ? &*mention : nullptr, candidates.span,
                                        c.entity_id, rank, backends));
  }
  return disambiguate(model, ids, features);
}

std::optional<std::string> prior_baseline(std::span<const std::string> candidate_ids,
                                          std::span<const FeatureVector> features) {
  RankerModel prior;
  prior.weights[1] = 1.0;  // cond_prob
  return disambiguate(prior, candidate_ids, features);
}

double span_f1(std::span<const LabeledSpan> spans,
               std::span<const std::optional<std::string>> predictions) {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const auto& gold = spans[i].gold;
    const auto& pred = predictions[i];
    if (pred && gold && *pred == *gold) {
      ++tp;
      continue;
    }
    if (pred) ++fp;
    if (gold) ++fn;
  }
  const double p = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  const double r = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

namespace {

struct Pair {
  std::array<double, kFeatureCount> x;
  double y;  // +1 gold, -1 other
};

// log(1 + exp(-m)) without overflow.
double softplus_neg(double m) {
  return m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
}

double mean_loss(const std::vector<Pair>& pairs, const std::array<double, kFeatureCount>& w,
                 double b) {
  double total = 0.0;
  for (const auto& p : pairs) {
    double z = b;
    for (std::size_t i = 0; i < kFeatureCount; ++i) z += w[i] * p.x[i];
    total += softplus_neg(p.y * z);
  }
  return total / static_cast<double>(pairs.size());
}

}  // namespace

TrainResult train_ranker(std::span<const LabeledSpan> spans, const TrainOptions& options) {
  if (spans.empty()) fail(ErrorCode::kInvalidArgument, "empty training set");
  for (const auto& s : spans) {
    if (s.candidate_ids.empty()) {
      fail(ErrorCode::kInvalidArgument, "training span without candidates");
    }
    if (s.candidate_ids.size() != s.features.size()) {
      fail(ErrorCode::kInvalidArgument, "candidate ids and features differ in length");
    }
  }
  if (!(options.holdout_fraction >= 0.0 && options.holdout_fraction < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "holdout fraction must be in [0, 1)");
  }

  std::vector<std::size_t> order(spans.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(options.seed);
  deterministic_shuffle(order, rng);
  std::size_t holdout = static_cast<std::size_t>(
      std::floor(options.holdout_fraction * static_cast<double>(spans.size())));
  holdout = std::min(holdout, spans.size() - 1);
  std::vector<std::size_t> held(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(holdout));
  std::vector<std::size_t> train(order.begin() + static_cast<std::ptrdiff_t>(holdout), order.end());
  // Iterate training spans in input order so the pair list (and therefore the
  // floating-point sums) depend only on which spans were held out.
  std::sort(train.begin(), train.end());
  std::sort(held.begin(), held.end());

  TrainResult result;
  result.train_spans = train.size();
  result.holdout_spans = held.size();

  std::vector<Pair> pairs;
  std::size_t positives = 0;
  for (std::size_t idx : train) {
    const auto& s = spans[idx];
    for (std::size_t c = 0; c < s.candidate_ids.size(); ++c) {
      const bool is_gold = s.gold && s.candidate_ids[c] == *s.gold;
      positives += is_gold ? 1 : 0;
      pairs.push_back({s.features[c].as_array(), is_gold ? 1.0 : -1.0});
    }
  }
  if (positives == 0 || positives == pairs.size()) {
    result.degenerate = true;
    result.diagnostic = positives == 0
                            ? "no gold candidate among the training pairs; weights only learn a bias"
                            : "every training pair is gold; weights only learn a bias";
  }

  std::array<double, kFeatureCount> w{};
  double b = 0.0;
  double lr = options.learning_rate;
  double loss = mean_loss(pairs, w, b);
  result.loss_history.push_back(loss);
  const double n = static_cast<double>(pairs.size());
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    std::array<double, kFeatureCount> gw{};
    double gb = 0.0;
    for (const auto& p : pairs) {
      double z = b;
      for (std::size_t i = 0; i < kFeatureCount; ++i) z += w[i] * p.x[i];
      // d/dz log(1 + exp(-y z)) = -y * sigmoid(-y z)
      const double m = p.y * z;
      const double sig = m > 0 ? std::exp(-m) / (1.0 + std::exp(-m)) : 1.0 / (1.0 + std::exp(m));
      const double g = -p.y * sig;
      for (std::size_t i = 0; i < kFeatureCount; ++i) gw[i] += g * p.x[i];
      gb += g;
    }
    for (auto& g : gw) g /= n;
    gb /= n;
    bool stepped = false;
    for (int attempt = 0; attempt < 60 && !stepped; ++attempt) {
      std::array<double, kFeatureCount> nw{};
      for (std::size_t i = 0; i < kFeatureCount; ++i) nw[i] = w[i] - lr * gw[i];
      const double nb = b - lr * gb;
      const double next = mean_loss(pairs, nw, nb);
      if (next <= loss) {
        w = nw;
        b = nb;
        loss = next;
        stepped = true;
      } else {
        lr *= 0.5;
      }
    }
    result.loss_history.push_back(loss);
  }
  result.model.weights = w;
  result.model.bias = b;

  // NIL threshold: the held-out best score that maximizes F1, lowest wins ties.
  std::vector<std::optional<std::string>> argmax;
  std::vector<double> best_scores;
  std::vector<LabeledSpan> held_spans;
  RankerModel open = result.model;
  open.nil_threshold = std::numeric_limits<double>::lowest();
  for (std::size_t idx : held) {
    const auto& s = spans[idx];
    held_spans.push_back(s);
    argmax.push_back(disambiguate(open, s.candidate_ids, s.features));
    double best = std::numeric_limits<double>::lowest();
    for (const auto& f : s.features) best = std::max(best, open.score(f));
    best_scores.push_back(best);
  }
  std::vector<double> thresholds = best_scores;
  thresholds.push_back(std::numeric_limits<double>::lowest());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  double best_f1 = -1.0;
  double chosen = std::numeric_limits<double>::lowest();
  for (double t : thresholds) {
    std::vector<std::optional<std::string>> preds(held.size());
    for (std::size_t i = 0; i < held.size(); ++i) {
      if (best_scores[i] >= t) preds[i] = argmax[i];
    }
    const double f1 = span_f1(held_spans, preds);
    if (f1 > best_f1) {
      best_f1 = f1;
      chosen = t;
    }
  }
  result.model.nil_threshold = chosen;
  result.holdout_f1 = held.empty() ? 0.0 : best_f1;
  return result;
}

}  // namespace elcand
