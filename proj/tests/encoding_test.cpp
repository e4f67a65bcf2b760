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
#include <random>
#include <sstream>

#include <doctest.h>

#include "elcand/encoding.hpp"
#include "elcand/text.hpp"
#include "error_code.hpp"

using namespace elcand;
using elcand::testing::error_code;

namespace {

SpanAnnotation span_of(std::string_view text, std::size_t start, std::size_t end) {
  SpanAnnotation s;
  s.tweet_id = "t";
  s.start = start;
  s.end = end;
  const std::size_t b = text::byte_offset(text, start);
  s.surface = std::string(text.substr(b, text::byte_offset(text, end) - b));
  return s;
}

Vector from_counts(const std::vector<int>& counts) {
  double sq = 0.0;
  for (int c : counts) sq += static_cast<double>(c) * c;
  Vector v;
  for (int c : counts) v.values.push_back(static_cast<float>(c / std::sqrt(sq)));
  return v;
}

}  // namespace

TEST_CASE("mention input splits around the span") {
  const std::string text = "I ❤️ New York 🙂!";
  const auto span = span_of(text, 5, 13);
  CHECK(span.surface == "New York");
  const MentionInput m = build_mention_input(text, span);
  CHECK(m.left == "I ❤️ ");
  CHECK(m.surface == "New York");
  CHECK(m.right == " 🙂!");
  CHECK(m.left + m.surface + m.right == text);
  CHECK(m.render() == "I ❤️  New York  🙂!");
  CHECK(m.render_marked() == "I ❤️  [M1] New York [M2]  🙂!");
}

TEST_CASE("mention input boundary cases") {
  const std::string text = "Liam is a gr8 ML Researcher";
  const MentionInput head = build_mention_input(text, span_of(text, 0, 4));
  CHECK(head.left.empty());
  CHECK(head.surface == "Liam");
  CHECK(head.right == " is a gr8 ML Researcher");
  const MentionInput whole = build_mention_input(text, span_of(text, 0, 27));
  CHECK(whole.left.empty());
  CHECK(whole.right.empty());
}

TEST_CASE("mention input rejects bad spans") {
  const std::string text = "abc def";
  SpanAnnotation s = span_of(text, 4, 7);
  s.surface = "xyz";
  CHECK(error_code([&] { build_mention_input(text, s); }) == ErrorCode::kInvalidArgument);
  SpanAnnotation past = span_of(text, 4, 7);
  past.end = 9;
  CHECK(error_code([&] { build_mention_input(text, past); }) == ErrorCode::kInvalidArgument);
  SpanAnnotation reversed = span_of(text, 4, 7);
  reversed.start = 5;
  reversed.end = 4;
  CHECK(error_code([&] { build_mention_input(text, reversed); }) == ErrorCode::kInvalidArgument);
  SpanAnnotation empty = span_of(text, 4, 7);
  empty.end = 4;
  empty.surface = "";
  CHECK(error_code([&] { build_mention_input(text, empty); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("mention input reconstructs fuzzed text") {
  const std::vector<std::string> pieces = {"a", "Z", " ", "é", "東京", "🙂", "👩‍👩‍👧", "\t", ".",
                                           "ß", "Ω", "\n", "x y"};
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    std::string text;
    const std::size_t n = 1 + rng() % 12;
    for (std::size_t j = 0; j < n; ++j) text += pieces[rng() % pieces.size()];
    const std::size_t len = text::length_utf8(text);
    const std::size_t start = rng() % len;
    const std::size_t end = start + 1 + rng() % (len - start);
    const auto span = span_of(text, start, end);
    const MentionInput m = build_mention_input(text, span);
    REQUIRE(m.left + m.surface + m.right == text);
    REQUIRE(m.surface == span.surface);
  }
}

TEST_CASE("sentence splitting") {
  using V = std::vector<std::string>;
  CHECK(split_sentences("Dr. Smith went home. He slept.") == V{"Dr. Smith went home. ", "He slept."});
  CHECK(split_sentences("Wait... What?! Yes.") == V{"Wait... ", "What?! ", "Yes."});
  CHECK(split_sentences("See e.g. Paris. It is big.") == V{"See e.g. Paris. ", "It is big."});
  CHECK(split_sentences("Version 2.0 is out. ok then.") == V{"Version 2.0 is out. ok then."});
  CHECK(split_sentences("Hi!   There  ") == V{"Hi!   ", "There  "});
  CHECK(split_sentences("One. Two.\n") == V{"One. ", "Two.\n"});
  CHECK(split_sentences("Über. Élan.") == V{"Über. ", "Élan."});
  CHECK(split_sentences("").empty());
  const std::string text = "A b. C d! E f? g. H";
  std::string joined;
  for (const auto& s : split_sentences(text)) joined += s;
  CHECK(joined == text);
}

TEST_CASE("first sentences trims and limits") {
  CHECK(first_sentences("One. Two. Three.", 2) == "One. Two.");
  CHECK(first_sentences("One. Two. Three.", 10) == "One. Two. Three.");
  CHECK(first_sentences("One.   ", 1) == "One.");
  CHECK(first_sentences("", 3).empty());
}

TEST_CASE("entity input selects the description") {
  Entity e{"Q1", "Paris", "Paris is a city. It is in France.", "capital of France", {}, {}, 0.0, 0};
  CHECK(build_entity_input(e, DescriptionMode::kLong, 1).render() == "Paris Paris is a city.");
  CHECK(build_entity_input(e, DescriptionMode::kShort).render() == "Paris capital of France");
  CHECK(build_entity_input(e, DescriptionMode::kShort).render_marked() ==
        "Paris [M3] capital of France");
}

TEST_CASE("reference embedder matches hand-evaluated hashes") {
  // Signed bucket counts evaluated independently of the library.
  ReferenceHashEmbedder e8(8);
  CHECK(e8.embed_text("ab") == from_counts({0, 0, 1, 0, 0, 0, 0, 0}));
  ReferenceHashEmbedder e16(16);
  CHECK(e16.embed_text("Hello, World!") ==
        from_counts({1, 0, 0, 1, 1, -1, 0, 0, 0, 0, 0, 0, 0, -1, 2, 0}));
  CHECK(e16.embed_text("Café naïve") ==
        from_counts({-1, 0, 0, 0, 0, 0, -1, -1, 0, 1, -1, 1, 0, -1, 0, -1}));
}

TEST_CASE("reference embedder outputs are bit-identical to frozen values") {
  ReferenceHashEmbedder e16(16);
  const Vector v = e16.embed_text("Hello, World!");
  const float third = 0x1.555556p-2f;
  const std::vector<float> expected = {third, 0, 0, third, third, -third, 0, 0,
                                       0,     0, 0, 0,     0,     -third, 0x1.555556p-1f, 0};
  CHECK(v.values == expected);
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("reference embeddings are unit norm or zero") {
  ReferenceHashEmbedder e;
  for (const char* s : {"x", "New York City", "🙂🙂🙂🙂", "a much longer sentence about things"}) {
    const Vector v = e.embed_text(s);
    CHECK(v.dim() == 256);
    CHECK(dot(v.values, v.values) == doctest::Approx(1.0).epsilon(1e-6));
  }
  const Vector empty = e.embed_text("");
  CHECK(dot(empty.values, empty.values) == 0.0);
  CHECK(error_code([] { ReferenceHashEmbedder bad(0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("dot rejects mismatched dimensions") {
  const std::vector<float> a = {1, 2};
  const std::vector<float> b = {1, 2, 3};
  CHECK(error_code([&] { dot(a, b); }) == ErrorCode::kDimMismatch);
  CHECK(dot(a, a) == 5.0);
}

TEST_CASE("vector files round trip") {
  VectorTable table(3);
  table.add("Q1", std::vector<float>{1.0f, -2.5f, 0.125f});
  table.add("Q2", std::vector<float>{0.0f, 3.0f, 1e-7f});
  CHECK(error_code([&] { table.add("Q1", std::vector<float>{1, 2, 3}); }) == ErrorCode::kDuplicate);
  CHECK(error_code([&] { table.add("Q3", std::vector<float>{1, 2}); }) == ErrorCode::kDimMismatch);
  std::stringstream buf;
  write_vectors(buf, table);
  const std::string bytes = buf.str();
  CHECK(bytes.substr(0, 4) == "ELVC");
  std::istringstream in(bytes);
  CHECK(read_vectors(in) == table);
  std::istringstream wrong_dim(bytes);
  CHECK(error_code([&] { read_vectors(wrong_dim, 4); }) == ErrorCode::kDimMismatch);
  std::istringstream truncated(bytes.substr(0, bytes.size() - 2));
  CHECK(error_code([&] { read_vectors(truncated); }) == ErrorCode::kParse);
  std::istringstream bad_magic("XXXX" + bytes.substr(4));
  CHECK(error_code([&] { read_vectors(bad_magic); }) == ErrorCode::kParse);
}

TEST_CASE("precomputed provider resolves keys") {
  VectorTable table(2);
  table.add("Q1", std::vector<float>{3.0f, 4.0f});
  table.add("t:0:5", std::vector<float>{1.0f, 0.0f});
  PrecomputedEmbedder p(table);
  CHECK(p.dim() == 2);
  CHECK(p.embed({"Q1", "ignored"}).values == std::vector<float>{3.0f, 4.0f});
  CHECK(error_code([&] { p.embed({"Q9", ""}); }) == ErrorCode::kNotFound);

  const std::string text = "hello world";
  const auto span = span_of(text, 0, 5);
  CHECK(mention_key(span) == "t:0:5");
  CHECK(embed_mention(p, text, span).values == std::vector<float>{1.0f, 0.0f});
  const Entity e{"Q1", "x", "", "", {}, {}, 0.0, 0};
  CHECK(embed_entity(p, e, DescriptionMode::kLong).values == std::vector<float>{3.0f, 4.0f});
}
