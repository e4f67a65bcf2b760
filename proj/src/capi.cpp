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

#include "elcand/elcand.h"

#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "elcand/dense_index.hpp"
#include "elcand/encoding.hpp"
#include "elcand/error.hpp"
#include "elcand/evaluation.hpp"
#include "elcand/file_util.hpp"
#include "elcand/kb_store.hpp"
#include "elcand/log.hpp"
#include "elcand/pipeline.hpp"
#include "elcand/sparse.hpp"

struct elc_store {
  elcand::EntityStore store;
};

struct elc_embedder {
  std::unique_ptr<elcand::EmbeddingProvider> provider;
};

struct elc_dense_index {
  elcand::DenseIndex index;
};

struct elc_alias_table {
  elcand::AliasTable table;
};

struct elc_bm25 {
  elcand::Bm25Index index;
};

struct elc_results {
  std::vector<elcand::ScoredCandidate> items;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_run_message;

elc_status status_of(elcand::ErrorCode code) {
  switch (code) {
    case elcand::ErrorCode::kInvalidArgument: return ELC_ERR_INVALID_ARGUMENT;
    case elcand::ErrorCode::kIo: return ELC_ERR_IO;
    case elcand::ErrorCode::kParse: return ELC_ERR_PARSE;
    case elcand::ErrorCode::kNotFound: return ELC_ERR_NOT_FOUND;
    case elcand::ErrorCode::kDuplicate: return ELC_ERR_DUPLICATE;
    case elcand::ErrorCode::kDimMismatch: return ELC_ERR_DIM_MISMATCH;
    case elcand::ErrorCode::kValidation: return ELC_ERR_VALIDATION;
    case elcand::ErrorCode::kRuntime: return ELC_ERR_RUNTIME;
  }
  return ELC_ERR_INTERNAL;
}

template <typename F>
elc_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return ELC_OK;
  } catch (const elcand::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return ELC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ELC_ERR_INTERNAL;
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) elcand::fail(elcand::ErrorCode::kInvalidArgument, std::string(name) + " is null");
}

elcand::DescriptionMode mode_or_long(const char* mode) {
  return mode == nullptr ? elcand::DescriptionMode::kLong : elcand::parse_description_mode(mode);
}

}  // namespace

extern "C" {

const char* elc_version(void) { return "1.0.0"; }

const char* elc_status_name(elc_status status) {
  switch (status) {
    case ELC_OK: return "ok";
    case ELC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ELC_ERR_IO: return "i/o error";
    case ELC_ERR_PARSE: return "parse error";
    case ELC_ERR_NOT_FOUND: return "not found";
    case ELC_ERR_DUPLICATE: return "duplicate";
    case ELC_ERR_DIM_MISMATCH: return "dimension mismatch";
    case ELC_ERR_VALIDATION: return "validation error";
    case ELC_ERR_RUNTIME: return "runtime error";
    case ELC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* elc_last_error(void) { return last_error.c_str(); }

elc_status elc_store_load(const char* entities_path, const char* description_mode,
                          elc_store** out) {
  return guarded([&] {
    require(entities_path, "entities_path");
    require(out, "out");
    elcand::EntityStore loaded = elcand::load_entities_file(entities_path);
    std::vector<elcand::Entity> entities(loaded.entities().begin(), loaded.entities().end());
    *out = new elc_store{elcand::EntityStore(std::move(entities), mode_or_long(description_mode))};
  });
}

elc_status elc_store_apply_denylist(elc_store* store, const char* denylist_path) {
  return guarded([&] {
    require(store, "store");
    require(denylist_path, "denylist_path");
    store->store =
        elcand::apply_type_filter(store->store, elcand::load_denylist_file(denylist_path));
  });
}

size_t elc_store_size(const elc_store* store) { return store ? store->store.size() : 0; }

elc_status elc_store_entity_id(const elc_store* store, size_t index, const char** out) {
  return guarded([&] {
    require(store, "store");
    require(out, "out");
    if (index >= store->store.size()) {
      elcand::fail(elcand::ErrorCode::kInvalidArgument, "entity index out of range");
    }
    *out = store->store.entities()[index].id.c_str();
  });
}

elc_status elc_store_description(const elc_store* store, const char* entity_id,
                                 const char* description_mode, const char** out) {
  return guarded([&] {
    require(store, "store");
    require(entity_id, "entity_id");
    require(out, "out");
    const elcand::DescriptionMode mode = description_mode == nullptr
                                             ? store->store.description_mode()
                                             : elcand::parse_description_mode(description_mode);
    *out = elcand::get_description(store->store, entity_id, mode).c_str();
  });
}

void elc_store_free(elc_store* store) { delete store; }

elc_status elc_embedder_create_hash(size_t dim, elc_embedder** out) {
  return guarded([&] {
    require(out, "out");
    *out = new elc_embedder{std::make_unique<elcand::ReferenceHashEmbedder>(dim)};
  });
}

elc_status elc_embedder_create_precomputed(const char* vectors_path, elc_embedder** out) {
  return guarded([&] {
    require(vectors_path, "vectors_path");
    require(out, "out");
    *out = new elc_embedder{
        std::make_unique<elcand::PrecomputedEmbedder>(elcand::load_vectors(vectors_path))};
  });
}

size_t elc_embedder_dim(const elc_embedder* embedder) {
  return embedder ? embedder->provider->dim() : 0;
}

elc_status elc_embedder_embed(const elc_embedder* embedder, const char* key, const char* text,
                              float* out, size_t out_len) {
  return guarded([&] {
    require(embedder, "embedder");
    require(out, "out");
    if (out_len != embedder->provider->dim()) {
      elcand::fail(elcand::ErrorCode::kDimMismatch,
                   "output buffer holds " + std::to_string(out_len) + " floats, embedder dim is " +
                       std::to_string(embedder->provider->dim()));
    }
    const elcand::Vector v =
        embedder->provider->embed({key ? key : "", text ? text : ""});
    std::copy(v.values.begin(), v.values.end(), out);
  });
}

void elc_embedder_free(elc_embedder* embedder) { delete embedder; }

elc_status elc_dense_index_build(const elc_store* store, const elc_embedder* embedder,
                                 const char* mode, size_t nlist, size_t nprobe, uint64_t seed,
                                 elc_dense_index** out) {
  return guarded([&] {
    require(store, "store");
    require(embedder, "embedder");
    require(out, "out");
    elcand::VectorTable table(embedder->provider->dim());
    for (const auto& e : store->store.entities()) {
      table.add(e.id,
                elcand::embed_entity(*embedder->provider, e, store->store.description_mode()).values);
    }
    elcand::ApproximateOptions opts;
    opts.nlist = nlist;
    opts.nprobe = nprobe;
    opts.seed = seed;
    const auto index_mode = mode == nullptr ? elcand::IndexMode::kExact : elcand::parse_index_mode(mode);
    *out = new elc_dense_index{elcand::DenseIndex::build(table, index_mode, opts)};
  });
}

elc_status elc_dense_index_load(const char* path, size_t nprobe, elc_dense_index** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new elc_dense_index{elcand::DenseIndex::load(path, nprobe)};
  });
}

elc_status elc_dense_index_save(const elc_dense_index* index, const char* path) {
  return guarded([&] {
    require(index, "index");
    require(path, "path");
    index->index.save(path);
  });
}

size_t elc_dense_index_size(const elc_dense_index* index) { return index ? index->index.size() : 0; }

elc_status elc_dense_index_search(const elc_dense_index* index, const float* query, size_t dim,
                                  size_t k, elc_results** out) {
  return guarded([&] {
    require(index, "index");
    require(query, "query");
    require(out, "out");
    *out = new elc_results{index->index.search({query, dim}, k)};
  });
}

void elc_dense_index_free(elc_dense_index* index) { delete index; }

elc_status elc_alias_table_build(const elc_store* store, const char* counts_path, int case_fold,
                                 elc_alias_table** out) {
  return guarded([&] {
    require(store, "store");
    require(out, "out");
    std::vector<elcand::AliasCount> counts;
    if (counts_path != nullptr) counts = elcand::load_alias_counts(counts_path);
    elcand::NormalizationConfig config;
    config.case_fold = case_fold != 0;
    *out = new elc_alias_table{elcand::build_alias_table(store->store, counts, config)};
  });
}

elc_status elc_alias_table_lookup(const elc_alias_table* table, const char* surface,
                                  elc_results** out) {
  return guarded([&] {
    require(table, "table");
    require(surface, "surface");
    require(out, "out");
    *out = new elc_results{elcand::lookup_candidates(table->table, surface)};
  });
}

void elc_alias_table_free(elc_alias_table* table) { delete table; }

elc_status elc_bm25_build(const elc_store* store, size_t max_sentences, double k1, double b,
                          elc_bm25** out) {
  return guarded([&] {
    require(store, "store");
    require(out, "out");
    *out = new elc_bm25{elcand::build_bm25_index(store->store, max_sentences, {k1, b})};
  });
}

elc_status elc_bm25_search(const elc_bm25* index, const char* query, size_t k, elc_results** out) {
  return guarded([&] {
    require(index, "index");
    require(query, "query");
    require(out, "out");
    *out = new elc_results{index->index.search(query, k)};
  });
}

void elc_bm25_free(elc_bm25* index) { delete index; }

size_t elc_results_size(const elc_results* results) { return results ? results->items.size() : 0; }

const char* elc_results_id(const elc_results* results, size_t index) {
  if (results == nullptr || index >= results->items.size()) return nullptr;
  return results->items[index].id.c_str();
}

double elc_results_score(const elc_results* results, size_t index) {
  if (results == nullptr || index >= results->items.size()) return 0.0;
  return results->items[index].score;
}

void elc_results_free(elc_results* results) { delete results; }

elc_status elc_convert_tweetnerd(const char* annotations_path, const char* texts_path,
                                 const char* split, const char* out_path) {
  return guarded([&] {
    require(annotations_path, "annotations_path");
    require(texts_path, "texts_path");
    require(split, "split");
    require(out_path, "out_path");
    std::ifstream annotations(annotations_path);
    if (!annotations) elcand::fail(elcand::ErrorCode::kIo, std::string("cannot open ") + annotations_path);
    std::ifstream texts(texts_path);
    if (!texts) elcand::fail(elcand::ErrorCode::kIo, std::string("cannot open ") + texts_path);
    const elcand::Dataset dataset =
        elcand::convert_tweetnerd(annotations, texts, elcand::parse_split(split));
    elcand::write_file_atomic(out_path, [&](std::ostream& os) { elcand::write_dataset(os, dataset); });
  });
}

int elc_run_pipeline(const char* config_path, const char* command, const char* const* overrides,
                     size_t override_count) {
  if (config_path == nullptr || command == nullptr || (overrides == nullptr && override_count > 0)) {
    last_run_message = "config path and command are required";
    return elcand::kExitValidation;
  }
  try {
    std::vector<std::string> list;
    for (size_t i = 0; i < override_count; ++i) list.emplace_back(overrides[i]);
    const elcand::RunResult result = elcand::run_pipeline(config_path, command, list);
    last_run_message = result.message;
    return result.exit_code;
  } catch (const std::exception& e) {
    last_run_message = e.what();
    return elcand::kExitRuntime;
  }
}

const char* elc_last_run_message(void) { return last_run_message.c_str(); }

elc_status elc_set_log_level(const char* level) {
  return guarded([&] {
    require(level, "level");
    const auto parsed = spdlog::level::from_str(level);
    if (parsed == spdlog::level::off && std::string(level) != "off") {
      elcand::fail(elcand::ErrorCode::kInvalidArgument, std::string("unknown log level '") + level + "'");
    }
    elcand::log().set_level(parsed);
  });
}

}  // extern "C"
