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

#include "fixtures.hpp"

#include <fstream>
#include <random>
#include <set>

#include "elcand/error.hpp"
#include "elcand/random.hpp"
#include "elcand/text.hpp"

namespace elcand::fixtures {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool chance(std::mt19937_64& rng, double p) { return uniform01(rng) < p; }

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[uniform_below(rng, v.size())];
}

std::string capitalize(std::string w) {
  if (!w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

// Pronounceable pseudo-words, never repeated within one vocabulary.
class Vocab {
 public:
  explicit Vocab(std::mt19937_64& rng) : rng_(rng) {}

  std::string word() {
    static constexpr std::string_view kConsonants = "bdfgklmnprstvz";
    static constexpr std::string_view kVowels = "aeiou";
    for (;;) {
      std::string w;
      const std::size_t syllables = 2 + uniform_below(rng_, 2);
      for (std::size_t i = 0; i < syllables; ++i) {
        w += kConsonants[uniform_below(rng_, kConsonants.size())];
        w += kVowels[uniform_below(rng_, kVowels.size())];
      }
      if (uniform_below(rng_, 3) == 0) w += kConsonants[uniform_below(rng_, kConsonants.size())];
      if (used_.insert(w).second) return w;
    }
  }

  std::vector<std::string> words(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(word());
    return out;
  }

  /// A spelling of w that is not in the vocabulary.
  std::string misspell(const std::string& w) {
    for (char extra : std::string_view("hxqwy")) {
      std::string m = w;
      m.insert(m.begin() + static_cast<std::ptrdiff_t>(m.size() / 2), extra);
      if (used_.insert(text::to_lower(m)).second) return m;
    }
    fail(ErrorCode::kRuntime, "cannot misspell " + w);
  }

  bool reserve(const std::string& w) { return used_.insert(w).second; }

 private:
  std::mt19937_64& rng_;
  std::set<std::string> used_;
};

// Appends space-separated chunks and tracks code-point offsets.
class TweetBuilder {
 public:
  std::pair<std::size_t, std::size_t> add(const std::string& chunk) {
    if (!text_.empty()) {
      text_ += ' ';
      ++length_;
    }
    const std::size_t start = length_;
    text_ += chunk;
    length_ += text::length_utf8(chunk);
    return {start, length_};
  }

  void add_all(const std::vector<std::string>& chunks) {
    for (const auto& c : chunks) add(c);
  }

  const std::string& text() const { return text_; }

 private:
  std::string text_;
  std::size_t length_ = 0;
};

std::string sentence(std::mt19937_64& rng, const std::vector<std::string>& pool,
                     const std::vector<std::string>& fillers, std::size_t words,
                     double filler_rate) {
  std::string s;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) s += ' ';
    const std::string& w =
        !fillers.empty() && chance(rng, filler_rate) ? pick(rng, fillers) : pick(rng, pool);
    s += i == 0 ? capitalize(w) : w;
  }
  return s + '.';
}

std::vector<std::string> sample(std::mt19937_64& rng, const std::vector<std::string>& pool,
                                std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(pick(rng, pool));
  return out;
}

std::string tweet_id(std::size_t i) { return "T" + std::to_string(100000 + i); }

std::string entity_id(std::size_t i) { return "Q" + std::to_string(1000 + i); }

Split rotating_split(std::size_t i, std::size_t train_share) {
  const std::size_t r = i % 10;
  if (r < train_share) return Split::kTrain;
  return (r - train_share) % 2 == 0 ? Split::kAcademic : Split::kOod;
}

SpanAnnotation gold_span(const Tweet& t, std::pair<std::size_t, std::size_t> range,
                         const std::string& surface, std::vector<std::string> gold) {
  SpanAnnotation s;
  s.tweet_id = t.id;
  s.start = range.first;
  s.end = range.second;
  s.surface = surface;
  s.gold_ids = std::move(gold);
  return s;
}

}  // namespace

Corpus general_corpus(const CorpusShape& shape) {
  std::mt19937_64 rng(shape.seed);
  Vocab vocab(rng);
  Corpus corpus;
  std::vector<std::string> fillers = vocab.words(60);
  for (const char* w : {"café", "naïve", "über", "東京", "🙂", "🎉", "Ωmega"}) fillers.push_back(w);
  std::vector<std::string> shorts;
  for (int i = 0; i < 12; ++i) shorts.push_back(capitalize(vocab.word()) + " " + vocab.word());
  const std::vector<std::string> types = {"person", "place", "organization", "work"};
  corpus.denylist = {"disambiguation page", "list"};

  std::vector<std::vector<std::string>> topics;
  std::vector<std::string> shared_aliases;
  for (std::size_t i = 0; i < shape.entities; ++i) {
    Entity e;
    e.id = entity_id(i);
    if (i > 0 && chance(rng, 0.15)) {
      e.title = corpus.entities[uniform_below(rng, i)].title;
    } else {
      e.title = capitalize(vocab.word());
      if (chance(rng, 0.4)) e.title += " " + capitalize(vocab.word());
    }
    topics.push_back(vocab.words(8));
    // Abstracts open with the entity name, as encyclopedia abstracts do.
    e.long_description = e.title + " " + sentence(rng, topics.back(), fillers, 4, 0.5);
    const std::size_t sentences = 2 + uniform_below(rng, 4);
    for (std::size_t s = 0; s < sentences; ++s) {
      e.long_description += ' ';
      if (chance(rng, 0.1)) e.long_description += "Dr. " + capitalize(pick(rng, topics.back())) + " ";
      e.long_description += sentence(rng, topics.back(), fillers, 5 + uniform_below(rng, 5), 0.3);
    }
    e.short_description = pick(rng, shorts);
    const std::size_t aliases = uniform_below(rng, 3);
    for (std::size_t a = 0; a < aliases; ++a) {
      if (!shared_aliases.empty() && chance(rng, 0.3)) {
        e.aliases.push_back(pick(rng, shared_aliases));
      } else {
        e.aliases.push_back(capitalize(vocab.word()));
        shared_aliases.push_back(e.aliases.back());
      }
    }
    e.type_tags = {pick(rng, types)};
    if (chance(rng, 0.05)) e.type_tags.push_back(pick(rng, corpus.denylist));
    e.pagerank = uniform01(rng);
    e.link_count = static_cast<std::int64_t>(uniform_below(rng, 1000));
    corpus.alias_counts.push_back({e.title, e.id, static_cast<std::int64_t>(1 + uniform_below(rng, 40))});
    for (const auto& a : e.aliases) {
      corpus.alias_counts.push_back({a, e.id, static_cast<std::int64_t>(1 + uniform_below(rng, 10))});
    }
    if (chance(rng, 0.1)) {
      corpus.alias_counts.push_back({text::to_lower(e.title), e.id, 2});
    }
    corpus.entities.push_back(std::move(e));
  }
  // A record for an entity outside the knowledge base.
  corpus.alias_counts.push_back({"Nowhere", "Q999999", 3});

  for (std::size_t t = 0; t < shape.tweets; ++t) {
    Tweet tweet;
    tweet.id = tweet_id(t);
    tweet.split = rotating_split(t, 4);
    TweetBuilder b;
    b.add_all(sample(rng, fillers, 1 + uniform_below(rng, 3)));
    const std::size_t spans = 1 + uniform_below(rng, 3);
    for (std::size_t s = 0; s < spans; ++s) {
      std::string surface;
      std::vector<std::string> gold;
      std::vector<std::string> before;
      std::vector<std::string> after;
      if (chance(rng, 0.1)) {
        surface = capitalize(vocab.word());
        before = sample(rng, fillers, uniform_below(rng, 3));
      } else {
        const std::size_t g = uniform_below(rng, corpus.entities.size());
        const Entity& e = corpus.entities[g];
        gold.push_back(e.id);
        switch (uniform_below(rng, 3)) {
          case 0: surface = e.title; break;
          case 1: surface = e.aliases.empty() ? e.title : pick(rng, e.aliases); break;
          default: surface = vocab.misspell(e.title); break;
        }
        if (chance(rng, 0.5)) surface = text::to_lower(surface);
        before = sample(rng, topics[g], uniform_below(rng, 4));
        after = sample(rng, topics[g], uniform_below(rng, 4));
        if (chance(rng, 0.05)) {
          gold.push_back(corpus.entities[uniform_below(rng, corpus.entities.size())].id);
        }
      }
      b.add_all(before);
      const auto range = b.add(surface);
      b.add_all(after);
      tweet.spans.push_back(gold_span(tweet, range, surface, gold));
      if (chance(rng, 0.3)) {
        SpanAnnotation ner = tweet.spans.back();
        ner.source = SpanSource::kNer;
        tweet.spans.push_back(ner);
      }
      b.add_all(sample(rng, fillers, uniform_below(rng, 2)));
    }
    tweet.text = b.text();
    corpus.dataset.tweets.push_back(std::move(tweet));
  }
  return corpus;
}

Corpus disjoint_strengths_corpus(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vocab vocab(rng);
  Corpus corpus;
  const std::vector<std::string> fillers = vocab.words(40);
  constexpr std::size_t kDecoys = 40;
  constexpr std::size_t kTopical = 160;
  constexpr std::size_t kPerHalf = 40;

  std::vector<std::vector<std::string>> topics;
  for (std::size_t i = 0; i < kDecoys + kTopical; ++i) {
    Entity e;
    e.id = entity_id(i);
    e.title = capitalize(vocab.word());
    const bool decoy = i < kDecoys;
    topics.push_back(decoy ? fillers : vocab.words(10));
    for (int s = 0; s < 4; ++s) {
      if (s) e.long_description += ' ';
      e.long_description += sentence(rng, topics.back(), {}, 8, 0.0);
    }
    e.short_description = "Entry " + std::to_string(i);
    e.type_tags = {"thing"};
    e.pagerank = uniform01(rng);
    e.link_count = static_cast<std::int64_t>(uniform_below(rng, 100));
    corpus.entities.push_back(std::move(e));
  }

  std::vector<std::size_t> order(kTopical);
  for (std::size_t i = 0; i < kTopical; ++i) order[i] = kDecoys + i;
  deterministic_shuffle(order, rng);
  for (std::size_t t = 0; t < 2 * kPerHalf; ++t) {
    const Entity& e = corpus.entities[order[t]];
    Tweet tweet;
    tweet.id = tweet_id(t);
    tweet.split = t % 2 == 0 ? Split::kAcademic : Split::kOod;
    TweetBuilder b;
    std::string surface;
    std::pair<std::size_t, std::size_t> range;
    if (t < kPerHalf) {
      // Reachable through the alias table only.
      surface = capitalize(vocab.word());
      corpus.alias_counts.push_back({surface, e.id, 5});
      b.add_all(sample(rng, fillers, 4));
      range = b.add(surface);
      b.add_all(sample(rng, fillers, 4));
    } else {
      // Reachable through the embedding only.
      surface = vocab.misspell(e.title);
      b.add_all(sample(rng, topics[order[t]], 4));
      range = b.add(surface);
      b.add_all(sample(rng, topics[order[t]], 4));
    }
    tweet.text = b.text();
    tweet.spans.push_back(gold_span(tweet, range, surface, {e.id}));
    corpus.dataset.tweets.push_back(std::move(tweet));
  }
  return corpus;
}

Corpus shared_short_corpus(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vocab vocab(rng);
  Corpus corpus;
  const std::vector<std::string> fillers = vocab.words(20);
  constexpr std::size_t kGroups = 20;
  constexpr std::size_t kGroupSize = 8;
  constexpr std::size_t kSingletons = 40;
  constexpr std::size_t kTweets = 200;
  const std::string shared = "Fictional person";

  std::vector<std::vector<std::string>> topics;
  std::vector<std::string> group_titles;
  for (std::size_t g = 0; g < kGroups; ++g) {
    group_titles.push_back(capitalize(vocab.word()) + " " + capitalize(vocab.word()));
  }
  for (std::size_t i = 0; i < kGroups * kGroupSize + kSingletons; ++i) {
    Entity e;
    e.id = entity_id(i);
    const bool namesake = i < kGroups * kGroupSize;
    e.title = namesake ? group_titles[i / kGroupSize] : capitalize(vocab.word());
    topics.push_back(vocab.words(10));
    for (int s = 0; s < 3; ++s) {
      if (s) e.long_description += ' ';
      e.long_description += sentence(rng, topics.back(), fillers, 8, 0.2);
    }
    e.short_description = namesake ? shared : "Place " + std::to_string(i);
    e.type_tags = {namesake ? "person" : "place"};
    e.pagerank = uniform01(rng);
    e.link_count = static_cast<std::int64_t>(uniform_below(rng, 1000));
    corpus.alias_counts.push_back({e.title, e.id, 3});
    corpus.entities.push_back(std::move(e));
  }

  for (std::size_t t = 0; t < kTweets; ++t) {
    const std::size_t g = uniform_below(rng, kGroups);
    const std::size_t member = g * kGroupSize + uniform_below(rng, kGroupSize);
    Tweet tweet;
    tweet.id = tweet_id(t);
    tweet.split = rotating_split(t, 6);
    TweetBuilder b;
    b.add(pick(rng, fillers));
    b.add_all(sample(rng, topics[member], 3));
    const auto range = b.add(group_titles[g]);
    b.add_all(sample(rng, topics[member], 3));
    tweet.text = b.text();
    tweet.spans.push_back(gold_span(tweet, range, group_titles[g], {corpus.entities[member].id}));
    corpus.dataset.tweets.push_back(std::move(tweet));
  }
  return corpus;
}

std::vector<LabeledSpan> separable_spans(std::uint64_t seed, std::size_t count,
                                         double nil_fraction) {
  std::mt19937_64 rng(seed);
  std::vector<LabeledSpan> out;
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t m = 2 + uniform_below(rng, 7);
    const bool nil = chance(rng, nil_fraction);
    const std::size_t gold = uniform_below(rng, m);
    std::vector<std::size_t> ranks(m);
    for (std::size_t i = 0; i < m; ++i) ranks[i] = i;
    deterministic_shuffle(ranks, rng);
    LabeledSpan span;
    for (std::size_t i = 0; i < m; ++i) {
      span.candidate_ids.push_back("E" + std::to_string(s) + "_" + std::to_string(i));
      FeatureVector f;
      f.log_mention_count = 3.0 * uniform01(rng);
      f.cond_prob = uniform01(rng);
      f.pagerank = uniform01(rng);
      f.log_link_count = 5.0 * uniform01(rng);
      f.context_sim = uniform01(rng);
      f.dense_rank_inv = 1.0 / (1.0 + static_cast<double>(ranks[i]));
      f.exact_title_match = static_cast<double>(uniform_below(rng, 2));
      if (!nil && i == gold) f.context_sim += 2.0;
      span.features.push_back(f);
    }
    if (!nil) span.gold = span.candidate_ids[gold];
    out.push_back(std::move(span));
  }
  return out;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& dir,
                  const nlohmann::json& extra) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) fail(ErrorCode::kIo, "cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("entities.jsonl");
    write_entities(out, EntityStore(corpus.entities));
  }
  {
    auto out = open("alias_counts.tsv");
    for (const auto& c : corpus.alias_counts) {
      out << c.surface << '\t' << c.entity_id << '\t' << c.count << '\n';
    }
  }
  {
    auto out = open("denylist.txt");
    out << "# type tags dropped at ingestion\n";
    for (const auto& d : corpus.denylist) out << d << '\n';
  }
  {
    auto out = open("dataset.jsonl");
    write_dataset(out, corpus.dataset);
  }
  nlohmann::json config = {{"paths",
                            {{"entities", "entities.jsonl"},
                             {"denylist", "denylist.txt"},
                             {"alias_counts", "alias_counts.tsv"},
                             {"dataset", "dataset.jsonl"},
                             {"output_dir", "out"}}}};
  config.merge_patch(extra);
  auto out = open("config.json");
  out << config.dump(2) << '\n';
}

}  // namespace elcand::fixtures
