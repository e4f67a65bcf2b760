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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "elcand/disambiguation.hpp"
#include "elcand/evaluation.hpp"
#include "elcand/kb_store.hpp"
#include "elcand/sparse.hpp"

namespace elcand::fixtures {

/// A knowledge base plus tweets, ready to be written out as pipeline inputs.
struct Corpus {
  std::vector<Entity> entities;
  std::vector<AliasCount> alias_counts;
  std::vector<std::string> denylist;
  Dataset dataset;
};

struct CorpusShape {
  std::size_t entities = 200;
  std::size_t tweets = 50;
  std::uint64_t seed = 2026;
};

/// Mixed corpus: namesakes, shared aliases, misspelled mentions, NIL spans,
/// NER spans, multi-byte text and denylisted entities.
Corpus general_corpus(const CorpusShape& shape);

/// Half of the gold mentions use an alias that only the alias table knows and
/// carry no topical context; the other half use an unseen spelling of the
/// title surrounded by words from the gold entity's description.
Corpus disjoint_strengths_corpus(std::uint64_t seed = 7);

/// Groups of namesakes that all share one short description but have distinct
/// long descriptions. Mentions are the shared title plus topical context.
Corpus shared_short_corpus(std::uint64_t seed = 11);

/// Candidate lists where the gold candidate's context_sim is offset by +2 and
/// cond_prob is noise. A nil_fraction of spans have no gold among their
/// candidates.
std::vector<LabeledSpan> separable_spans(std::uint64_t seed, std::size_t count,
                                         double nil_fraction = 0.1);

/// Writes entities.jsonl, alias_counts.tsv, denylist.txt, dataset.jsonl and a
/// config.json pointing at them (output_dir "out"), merged with extra.
void write_corpus(const Corpus& corpus, const std::filesystem::path& dir,
                  const nlohmann::json& extra = nlohmann::json::object());

}  // namespace elcand::fixtures
