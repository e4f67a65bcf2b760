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

#include <algorithm>
#include <fstream>

#include "elcand/error.hpp"
#include "elcand/pipeline.hpp"

namespace elcand {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
  fail(ErrorCode::kValidation, "config field '" + field + "': " + what);
}

// Deep-merges user values onto the defaults, rejecting keys the defaults do
// not know about.
void merge_known(json& base, const json& user, const std::string& prefix) {
  if (!user.is_object()) invalid(prefix.empty() ? "<root>" : prefix, "must be an object");
  for (const auto& [key, value] : user.items()) {
    const std::string field = prefix.empty() ? key : prefix + "." + key;
    if (!base.contains(key)) invalid(field, "unknown field");
    if (base[key].is_object()) {
      merge_known(base[key], value, field);
    } else {
      base[key] = value;
    }
  }
}

template <typename T>
T get(const json& j, const std::string& field) {
  const json* node = &j;
  std::size_t pos = 0;
  while (pos <= field.size()) {
    const auto dot = field.find('.', pos);
    const std::string part = field.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (!node->is_object() || !node->contains(part)) invalid(field, "missing");
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  try {
    if constexpr (std::is_same_v<T, std::size_t>) {
      if (!node->is_number_integer() || node->get<std::int64_t>() < 0) {
        invalid(field, "must be a non-negative integer");
      }
    } else if constexpr (std::is_same_v<T, double>) {
      if (!node->is_number()) invalid(field, "must be a number");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!node->is_boolean()) invalid(field, "must be true or false");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!node->is_string()) invalid(field, "must be a string");
    }
    return node->get<T>();
  } catch (const json::exception& e) {
    invalid(field, e.what());
  }
}

template <typename T, typename Parse>
T parse_enum(const json& j, const std::string& field, Parse parse) {
  const auto s = get<std::string>(j, field);
  try {
    return parse(s);
  } catch (const Error& e) {
    invalid(field, e.what());
  }
}

template <typename T, typename Parse>
std::vector<T> parse_enum_list(const json& j, const std::string& field, Parse parse) {
  const auto list = get<std::vector<std::string>>(j, field);
  std::vector<T> out;
  for (const auto& s : list) {
    T v;
    try {
      v = parse(s);
    } catch (const Error& e) {
      invalid(field, e.what());
    }
    if (std::find(out.begin(), out.end(), v) != out.end()) invalid(field, "duplicate entry '" + s + "'");
    out.push_back(v);
  }
  return out;
}

template <typename T>
json names(const std::vector<T>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

}  // namespace

json PipelineConfig::to_json() const {
  return {
      {"paths",
       {{"entities", paths.entities},
        {"denylist", paths.denylist},
        {"alias_counts", paths.alias_counts},
        {"dataset", paths.dataset},
        {"vectors", paths.vectors},
        {"model", paths.model},
        {"output_dir", paths.output_dir}}},
      {"retrieval",
       {{"k", retrieval.k},
        {"methods", names(retrieval.methods)},
        {"hybrid_include_bm25", retrieval.hybrid_include_bm25},
        {"span_source", to_string(retrieval.span_source)},
        {"eval_mode", to_string(retrieval.eval_mode)},
        {"curve_ks", retrieval.curve_ks},
        {"eval_splits", names(retrieval.eval_splits)}}},
      {"description_mode", to_string(description_mode)},
      {"normalization",
       {{"case_fold", normalization.case_fold},
        {"collapse_whitespace", normalization.collapse_whitespace},
        {"strip_outer_punct", normalization.strip_outer_punct}}},
      {"bm25", {{"k1", bm25.k1}, {"b", bm25.b}, {"max_sentences", bm25.max_sentences}}},
      {"embedder",
       {{"kind", to_string(embedder.kind)},
        {"dim", embedder.dim},
        {"max_sentences", embedder.max_sentences}}},
      {"dense",
       {{"mode", to_string(dense.mode)},
        {"nlist", dense.nlist},
        {"nprobe", dense.nprobe},
        {"recall_floor", dense.recall_floor}}},
      {"disambiguation",
       {{"learning_rate", disambiguation.learning_rate},
        {"epochs", disambiguation.epochs},
        {"holdout_fraction", disambiguation.holdout_fraction},
        {"candidate_method", disambiguation.candidate_method}}},
      {"seed", seed},
  };
}

std::filesystem::path PipelineConfig::resolve(const std::string& path) const {
  const std::filesystem::path p(path);
  return p.is_absolute() ? p : base_dir / p;
}

PipelineConfig config_from_json(const json& user, const std::filesystem::path& base_dir) {
  const PipelineConfig defaults;
  json j = defaults.to_json();
  merge_known(j, user, "");

  PipelineConfig c;
  c.base_dir = base_dir;
  c.paths.entities = get<std::string>(j, "paths.entities");
  c.paths.denylist = get<std::string>(j, "paths.denylist");
  c.paths.alias_counts = get<std::string>(j, "paths.alias_counts");
  c.paths.dataset = get<std::string>(j, "paths.dataset");
  c.paths.vectors = get<std::string>(j, "paths.vectors");
  c.paths.model = get<std::string>(j, "paths.model");
  c.paths.output_dir = get<std::string>(j, "paths.output_dir");
  if (c.paths.output_dir.empty()) invalid("paths.output_dir", "must not be empty");

  c.retrieval.k = get<std::size_t>(j, "retrieval.k");
  if (c.retrieval.k < 1) invalid("retrieval.k", "must be at least 1");
  c.retrieval.methods = parse_enum_list<Method>(j, "retrieval.methods", parse_method);
  if (c.retrieval.methods.empty()) invalid("retrieval.methods", "must name at least one method");
  c.retrieval.hybrid_include_bm25 = get<bool>(j, "retrieval.hybrid_include_bm25");
  c.retrieval.span_source = parse_enum<SpanSource>(j, "retrieval.span_source", parse_span_source);
  c.retrieval.eval_mode = parse_enum<EvalMode>(j, "retrieval.eval_mode", parse_eval_mode);
  c.retrieval.curve_ks = get<std::vector<std::size_t>>(j, "retrieval.curve_ks");
  for (std::size_t i = 0; i < c.retrieval.curve_ks.size(); ++i) {
    if (c.retrieval.curve_ks[i] < 1 || (i > 0 && c.retrieval.curve_ks[i] <= c.retrieval.curve_ks[i - 1])) {
      invalid("retrieval.curve_ks", "must be positive and strictly ascending");
    }
  }
  c.retrieval.eval_splits = parse_enum_list<Split>(j, "retrieval.eval_splits", parse_split);
  if (c.retrieval.eval_splits.empty()) invalid("retrieval.eval_splits", "must name at least one split");

  c.description_mode = parse_enum<DescriptionMode>(j, "description_mode", parse_description_mode);
  c.normalization.case_fold = get<bool>(j, "normalization.case_fold");
  c.normalization.collapse_whitespace = get<bool>(j, "normalization.collapse_whitespace");
  c.normalization.strip_outer_punct = get<bool>(j, "normalization.strip_outer_punct");

  c.bm25.k1 = get<double>(j, "bm25.k1");
  if (c.bm25.k1 < 0.0) invalid("bm25.k1", "must be non-negative");
  c.bm25.b = get<double>(j, "bm25.b");
  if (c.bm25.b < 0.0 || c.bm25.b > 1.0) invalid("bm25.b", "must be in [0, 1]");
  c.bm25.max_sentences = get<std::size_t>(j, "bm25.max_sentences");
  if (c.bm25.max_sentences < 1) invalid("bm25.max_sentences", "must be at least 1");

  c.embedder.kind = parse_enum<ProviderKind>(j, "embedder.kind", parse_provider_kind);
  c.embedder.dim = get<std::size_t>(j, "embedder.dim");
  if (c.embedder.dim < 1) invalid("embedder.dim", "must be at least 1");
  c.embedder.max_sentences = get<std::size_t>(j, "embedder.max_sentences");
  if (c.embedder.max_sentences < 1) invalid("embedder.max_sentences", "must be at least 1");

  c.dense.mode = parse_enum<IndexMode>(j, "dense.mode", parse_index_mode);
  c.dense.nlist = get<std::size_t>(j, "dense.nlist");
  c.dense.nprobe = get<std::size_t>(j, "dense.nprobe");
  c.dense.recall_floor = get<double>(j, "dense.recall_floor");
  if (c.dense.recall_floor < 0.0 || c.dense.recall_floor > 1.0) {
    invalid("dense.recall_floor", "must be in [0, 1]");
  }

  c.disambiguation.learning_rate = get<double>(j, "disambiguation.learning_rate");
  if (!(c.disambiguation.learning_rate > 0.0)) invalid("disambiguation.learning_rate", "must be positive");
  c.disambiguation.epochs = get<std::size_t>(j, "disambiguation.epochs");
  c.disambiguation.holdout_fraction = get<double>(j, "disambiguation.holdout_fraction");
  if (c.disambiguation.holdout_fraction < 0.0 || c.disambiguation.holdout_fraction >= 1.0) {
    invalid("disambiguation.holdout_fraction", "must be in [0, 1)");
  }
  c.disambiguation.candidate_method = get<std::string>(j, "disambiguation.candidate_method");
  if (c.disambiguation.candidate_method != "hybrid") {
    try {
      parse_method(c.disambiguation.candidate_method);
    } catch (const Error&) {
      invalid("disambiguation.candidate_method", "must be hybrid, lookup, dense or bm25");
    }
  }
  if (!j["seed"].is_number_unsigned()) invalid("seed", "must be a non-negative integer");
  c.seed = j["seed"].get<std::uint64_t>();
  return c;
}

void apply_override(json& j, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    fail(ErrorCode::kValidation,
         "override '" + std::string(assignment) + "' must have the form key.path=value");
  }
  const std::string path(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;
  }
  json* node = &j;
  std::size_t pos = 0;
  while (true) {
    const auto dot = path.find('.', pos);
    const std::string part = path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (part.empty()) fail(ErrorCode::kValidation, "override key '" + path + "' has an empty segment");
    if (!node->is_object()) *node = json::object();
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    pos = dot + 1;
  }
}

PipelineConfig load_config(const std::filesystem::path& path,
                           const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kValidation, "cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kValidation, "config file " + path.string() + " is not valid JSON: " + e.what());
  }
  for (const auto& o : overrides) apply_override(j, o);
  const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  return config_from_json(j, base);
}

}  // namespace elcand
