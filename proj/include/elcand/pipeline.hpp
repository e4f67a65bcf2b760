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
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "elcand/dense_index.hpp"
#include "elcand/encoding.hpp"
#include "elcand/evaluation.hpp"
#include "elcand/kb_store.hpp"
#include "elcand/normalize.hpp"
#include "elcand/scored.hpp"
#include "elcand/sparse.hpp"

namespace elcand {

/// One experiment. Relative paths resolve against base_dir (the directory of
/// the config file). Every field round-trips through to_json so reports can
/// echo the exact configuration that produced them.
struct PipelineConfig {
  struct Paths {
    std::string entities;
    std::string denylist;
    std::string alias_counts;
    std::string dataset;
    std::string vectors;
    std::string model;
    std::string output_dir = "out";
  } paths;

  struct Retrieval {
    std::size_t k = kDefaultTopK;
    std::vector<Method> methods = {Method::kLookup, Method::kDense, Method::kBm25};
    bool hybrid_include_bm25 = false;
    SpanSource span_source = SpanSource::kGold;
    EvalMode eval_mode = EvalMode::kSpanAligned;
    std::vector<std::size_t> curve_ks = {1, 2, 4, 8, 16, 32, 64};
    std::vector<Split> eval_splits = {Split::kAcademic, Split::kOod};
  } retrieval;

  DescriptionMode description_mode = DescriptionMode::kLong;
  NormalizationConfig normalization;

  struct Bm25 {
    double k1 = 0.9;
    double b = 0.4;
    std::size_t max_sentences = kDefaultMaxSentences;
  } bm25;

  struct Embedder {
    ProviderKind kind = ProviderKind::kReferenceHash;
    std::size_t dim = ReferenceHashEmbedder::kDefaultDim;
    std::size_t max_sentences = kDefaultMaxSentences;
  } embedder;

  struct Dense {
    IndexMode mode = IndexMode::kExact;
    std::size_t nlist = 0;
    std::size_t nprobe = 0;
    double recall_floor = 0.95;
  } dense;

  struct Disambiguation {
    double learning_rate = 0.5;
    std::size_t epochs = 200;
    double holdout_fraction = 0.1;
    /// "hybrid", "dense", "lookup" or "bm25".
    std::string candidate_method = "hybrid";
  } disambiguation;

  std::uint64_t seed = 13;
  std::filesystem::path base_dir = ".";

  nlohmann::json to_json() const;
  std::filesystem::path resolve(const std::string& path) const;
};

/// Throws Error(kValidation) naming the offending field.
PipelineConfig config_from_json(const nlohmann::json& j,
                                const std::filesystem::path& base_dir = ".");

/// "a.b.c=value"; the value is parsed as JSON when possible, otherwise taken
/// as a string.
void apply_override(nlohmann::json& j, std::string_view assignment);

PipelineConfig load_config(const std::filesystem::path& path,
                           const std::vector<std::string>& overrides = {});

enum class Command {
  kIngest,
  kBuildIndex,
  kRetrieve,
  kEvaluate,
  kOverlapReport,
  kAblate,
  kDisambigTrain,
  kDisambigEval,
};

std::string_view to_string(Command command);
Command parse_command(std::string_view s);

/// Checks referenced input paths and the output directory for a command.
void validate_config(const PipelineConfig& config, Command command);

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

struct RunResult {
  int exit_code = kExitOk;
  std::string message;
  std::vector<std::filesystem::path> outputs;
};

/// Runs one command. Exceptions never escape: failures come back as exit
/// code 1 (validation) or 2 (runtime), with any outputs written by the failed
/// run removed.
RunResult run_pipeline(const PipelineConfig& config, Command command);

/// Loads the config, applies overrides and runs; validation problems in the
/// config itself also map to exit code 1.
RunResult run_pipeline(const std::filesystem::path& config_path, std::string_view command,
                       const std::vector<std::string>& overrides = {});

}  // namespace elcand
