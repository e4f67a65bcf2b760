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

#include <sstream>

#include <doctest.h>

#include "elcand/retrieval.hpp"
#include "error_code.hpp"

using namespace elcand;
using elcand::testing::error_code;

namespace {

struct World {
  EntityStore store;
  AliasTable aliases;
  ReferenceHashEmbedder embedder{64};
  DenseIndex dense;
  Bm25Index bm25;

  World()
      : store({{"Q1", "Paris", "Paris is the capital of France.", "capital", {}, {}, 0.9, 100},
               {"Q2", "Paris Hilton", "Paris Hilton is a media personality.", "person", {"Paris"}, {}, 0.2, 10},
               {"Q3", "Lyon", "Lyon is a city in France.", "city", {}, {}, 0.5, 50},
               {"Q4", "Texas", "Paris is also a town in Texas.", "state", {}, {}, 0.4, 40}}),
        aliases(build_alias_table(store, std::vector<AliasCount>{{"Paris", "Q1", 9}, {"Paris", "Q2", 1}})),
        dense(build_dense()),
        bm25(build_bm25_index(store, 10)) {}

  DenseIndex build_dense() const {
    VectorTable t(embedder.dim());
    for (const auto& e : store.entities()) {
      t.add(e.id, embed_entity(embedder, e, DescriptionMode::kLong).values);
    }
    return DenseIndex::build(t);
  }

  Backends backends() const { return {&store, &aliases, &dense, &bm25, &embedder}; }
};

const std::string kTweet = "Flying to Paris for the capital city of France";

SpanAnnotation paris_span() {
  SpanAnnotation s;
  s.tweet_id = "t1";
  s.start = 10;
  s.end = 15;
  s.surface = "Paris";
  return s;
}

}  // namespace

TEST_CASE("lookup retrieval returns every match flagged as unranked") {
  const World w;
  const CandidateSet set = retrieve(Method::kLookup, kTweet, paris_span(), w.backends());
  CHECK(set.tweet_id == "t1");
  REQUIRE(set.candidates.size() == 2);
  CHECK(set.candidates[0].entity_id == "Q1");
  CHECK(set.candidates[0].scores.at(Method::kLookup) == 0.9);
  CHECK(set.method_config.at(Method::kLookup).all);
  // Unranked lists count at every cutoff.
  CHECK(set.ids_within(1).size() == 2);
}

TEST_CASE("dense and bm25 retrieval respect k") {
  const World w;
  for (std::size_t k : {1, 2, 3, 16}) {
    const CandidateSet dense = retrieve(Method::kDense, kTweet, paris_span(), w.backends(), k);
    CHECK(dense.candidates.size() == std::min<std::size_t>(k, 4));
    CHECK_FALSE(dense.method_config.at(Method::kDense).all);
    const CandidateSet bm25 = retrieve(Method::kBm25, kTweet, paris_span(), w.backends(), k);
    CHECK(bm25.candidates.size() <= k);
  }
  const CandidateSet dense = retrieve(Method::kDense, kTweet, paris_span(), w.backends(), 4);
  CHECK(dense.candidates.front().entity_id == "Q1");
  CHECK(dense.ids_within(1) == std::vector<std::string>{"Q1"});
  const CandidateSet bm25 = retrieve(Method::kBm25, kTweet, paris_span(), w.backends(), 16);
  // Q1 and Q2 tie on length and tf; the id breaks the tie.
  CHECK(bm25.ids() == std::vector<std::string>{"Q1", "Q2", "Q4"});
}

TEST_CASE("retrieval validates spans and backends") {
  const World w;
  SpanAnnotation bad = paris_span();
  bad.surface = "Lyon";
  for (Method m : {Method::kLookup, Method::kDense, Method::kBm25}) {
    CHECK(error_code([&] { retrieve(m, kTweet, bad, w.backends()); }) == ErrorCode::kInvalidArgument);
  }
  Backends none;
  none.store = &w.store;
  for (Method m : {Method::kLookup, Method::kDense, Method::kBm25}) {
    CHECK(error_code([&] { retrieve(m, kTweet, paris_span(), none); }) == ErrorCode::kInvalidArgument);
  }
}

TEST_CASE("hybrid union keeps provenance and order") {
  const World w;
  const CandidateSet lookup = retrieve(Method::kLookup, kTweet, paris_span(), w.backends());
  const CandidateSet dense = retrieve(Method::kDense, kTweet, paris_span(), w.backends(), 2);
  const CandidateSet hybrid = hybrid_union(lookup, dense);
  std::vector<std::string> expected = lookup.ids();
  for (const auto& id : dense.ids()) {
    if (std::find(expected.begin(), expected.end(), id) == expected.end()) expected.push_back(id);
  }
  CHECK(hybrid.ids() == expected);
  const Candidate* q1 = hybrid.find("Q1");
  REQUIRE(q1 != nullptr);
  CHECK(q1->methods() == std::set<Method>{Method::kLookup, Method::kDense});
  CHECK(q1->scores.at(Method::kLookup) == 0.9);
  CHECK(q1->ranks.at(Method::kDense) == 0);
  CHECK(hybrid.method_config.size() == 2);
  // Everything either component has within k, the union has within k.
  for (std::size_t k = 1; k <= 4; ++k) {
    for (const auto& id : dense.ids_within(k)) {
      const auto in = hybrid.ids_within(k);
      CHECK(std::find(in.begin(), in.end(), id) != in.end());
    }
  }
  SpanAnnotation other = paris_span();
  other.start = 11;
  CandidateSet shifted = dense;
  shifted.span = other;
  CHECK(error_code([&] { hybrid_union(lookup, shifted); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("candidate sets round trip through jsonl") {
  const World w;
  const CandidateSet hybrid =
      hybrid_union(retrieve(Method::kLookup, kTweet, paris_span(), w.backends()),
                   retrieve(Method::kDense, kTweet, paris_span(), w.backends(), 3));
  std::vector<CandidateSet> sets = {hybrid};
  std::stringstream buf;
  write_candidates_jsonl(buf, sets);
  std::istringstream in(buf.str());
  const auto back = read_candidates_jsonl(in);
  REQUIRE(back.size() == 1);
  CHECK(back[0] == hybrid);
}

TEST_CASE("method names") {
  CHECK(parse_method("bm25") == Method::kBm25);
  CHECK(to_string(Method::kLookup) == "lookup");
  CHECK(error_code([] { parse_method("hybrid"); }).has_value());
}
