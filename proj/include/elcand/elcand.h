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

/* C interface to the elcand candidate-generation engine.
 *
 * Every object is an opaque handle released with its matching *_free
 * function. Functions return ELC_OK or an error status; the message for the
 * most recent failure on the calling thread is available from
 * elc_last_error(). Strings returned through out-parameters stay valid until
 * the owning handle is freed. */

#ifndef ELCAND_ELCAND_H_
#define ELCAND_ELCAND_H_

#include <stddef.h>
#include <stdint.h>

#if defined(ELC_BUILDING_LIBRARY)
#define ELC_API __attribute__((visibility("default")))
#else
#define ELC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum elc_status {
  ELC_OK = 0,
  ELC_ERR_INVALID_ARGUMENT = 1,
  ELC_ERR_IO = 2,
  ELC_ERR_PARSE = 3,
  ELC_ERR_NOT_FOUND = 4,
  ELC_ERR_DUPLICATE = 5,
  ELC_ERR_DIM_MISMATCH = 6,
  ELC_ERR_VALIDATION = 7,
  ELC_ERR_RUNTIME = 8,
  ELC_ERR_INTERNAL = 9
} elc_status;

typedef struct elc_store elc_store;
typedef struct elc_embedder elc_embedder;
typedef struct elc_dense_index elc_dense_index;
typedef struct elc_alias_table elc_alias_table;
typedef struct elc_bm25 elc_bm25;
typedef struct elc_results elc_results;

ELC_API const char* elc_version(void);
ELC_API const char* elc_status_name(elc_status status);
/* Message of the last failed call on this thread; "" if none. */
ELC_API const char* elc_last_error(void);

/* description_mode is "long" or "short"; NULL means "long". */
ELC_API elc_status elc_store_load(const char* entities_path, const char* description_mode,
                                  elc_store** out);
/* Drops entities carrying a denylisted type tag. */
ELC_API elc_status elc_store_apply_denylist(elc_store* store, const char* denylist_path);
ELC_API size_t elc_store_size(const elc_store* store);
ELC_API elc_status elc_store_entity_id(const elc_store* store, size_t index, const char** out);
ELC_API elc_status elc_store_description(const elc_store* store, const char* entity_id,
                                         const char* description_mode, const char** out);
ELC_API void elc_store_free(elc_store* store);

ELC_API elc_status elc_embedder_create_hash(size_t dim, elc_embedder** out);
ELC_API elc_status elc_embedder_create_precomputed(const char* vectors_path, elc_embedder** out);
ELC_API size_t elc_embedder_dim(const elc_embedder* embedder);
/* key is only used by precomputed embedders; out must hold dim floats. */
ELC_API elc_status elc_embedder_embed(const elc_embedder* embedder, const char* key,
                                      const char* text, float* out, size_t out_len);
ELC_API void elc_embedder_free(elc_embedder* embedder);

/* Embeds every entity of the store. mode is "exact" or "approximate";
 * nlist and nprobe of 0 select defaults. */
ELC_API elc_status elc_dense_index_build(const elc_store* store, const elc_embedder* embedder,
                                         const char* mode, size_t nlist, size_t nprobe,
                                         uint64_t seed, elc_dense_index** out);
ELC_API elc_status elc_dense_index_load(const char* path, size_t nprobe, elc_dense_index** out);
ELC_API elc_status elc_dense_index_save(const elc_dense_index* index, const char* path);
ELC_API size_t elc_dense_index_size(const elc_dense_index* index);
ELC_API elc_status elc_dense_index_search(const elc_dense_index* index, const float* query,
                                          size_t dim, size_t k, elc_results** out);
ELC_API void elc_dense_index_free(elc_dense_index* index);

/* counts_path may be NULL (titles and aliases only). */
ELC_API elc_status elc_alias_table_build(const elc_store* store, const char* counts_path,
                                         int case_fold, elc_alias_table** out);
ELC_API elc_status elc_alias_table_lookup(const elc_alias_table* table, const char* surface,
                                          elc_results** out);
ELC_API void elc_alias_table_free(elc_alias_table* table);

ELC_API elc_status elc_bm25_build(const elc_store* store, size_t max_sentences, double k1,
                                  double b, elc_bm25** out);
ELC_API elc_status elc_bm25_search(const elc_bm25* index, const char* query, size_t k,
                                   elc_results** out);
ELC_API void elc_bm25_free(elc_bm25* index);

ELC_API size_t elc_results_size(const elc_results* results);
ELC_API const char* elc_results_id(const elc_results* results, size_t index);
ELC_API double elc_results_score(const elc_results* results, size_t index);
ELC_API void elc_results_free(elc_results* results);

/* Writes a dataset JSONL from TweetNERD-style annotations and a
 * tweet_id<TAB>text file. split is "academic", "ood" or "train". */
ELC_API elc_status elc_convert_tweetnerd(const char* annotations_path, const char* texts_path,
                                         const char* split, const char* out_path);

/* Runs one pipeline command and returns its exit code (0 ok, 1 validation
 * error, 2 runtime error). Overrides are "dot.path=value" strings. */
ELC_API int elc_run_pipeline(const char* config_path, const char* command,
                             const char* const* overrides, size_t override_count);
/* Message of the last pipeline run on this thread. */
ELC_API const char* elc_last_run_message(void);

/* "trace", "debug", "info", "warn", "error", "critical" or "off". */
ELC_API elc_status elc_set_log_level(const char* level);

#ifdef __cplusplus
}
#endif

#endif /* ELCAND_ELCAND_H_ */
