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

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "elcand/encoding.hpp"
#include "elcand/scored.hpp"

namespace elcand {

enum class IndexMode { kExact, kApproximate };

std::string_view to_string(IndexMode mode);
IndexMode parse_index_mode(std::string_view s);

inline constexpr std::size_t kDefaultTopK = 16;

struct ApproximateOptions {
  /// Coarse cells; 0 picks round(sqrt(count)).
  std::size_t nlist = 0;
  /// Cells scanned per query; 0 picks max(1, nlist / 4).
  std::size_t nprobe = 0;
  std::size_t kmeans_iterations = 20;
  std::uint64_t seed = 17;
  /// Recall@16 against exact search that the build must reach.
  double recall_floor = 0.95;
  /// Indexed vectors sampled as held-out queries for the recall check.
  std::size_t recall_sample = 100;
};

/// Dot-product index over an id-keyed vector table. Exact mode scans every
/// row; approximate mode is an inverted file over k-means cells.
class DenseIndex {
 public:
  /// Throws kInvalidArgument on an empty table and kValidation when the
  /// approximate build misses its recall floor.
  static DenseIndex build(const VectorTable& table,
                          IndexMode mode = IndexMode::kExact,
                          const ApproximateOptions& options = {});

  std::size_t size() const { return table_.size(); }
  std::size_t dim() const { return table_.dim(); }
  IndexMode mode() const { return mode_; }
  const VectorTable& vectors() const { return table_; }

  std::size_t cell_count() const { return centroids_.size() / std::max<std::size_t>(dim(), 1); }
  std::size_t nprobe() const { return nprobe_; }
  void set_nprobe(std::size_t nprobe);
  /// Recall@16 measured at build time (1.0 in exact mode).
  double measured_recall() const { return measured_recall_; }

  /// Top min(k, size) by dot product, score descending, id ascending on ties.
  std::vector<ScoredCandidate> search(std::span<const float> query,
                                      std::size_t k = kDefaultTopK) const;
  std::vector<ScoredCandidate> search_exact(std::span<const float> query,
                                            std::size_t k) const;

  /// Vector-file body followed by u32 cell count and one u32 cell id per
  /// vector (no cell ids when the count is zero).
  void write(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;
  static DenseIndex read(std::istream& in, std::size_t nprobe = 0);
  static DenseIndex load(const std::filesystem::path& path,
                         std::size_t nprobe = 0);

 private:
  void check_query(std::span<const float> query) const;
  void rebuild_cells();

  VectorTable table_;
  IndexMode mode_ = IndexMode::kExact;
  std::vector<std::uint32_t> assignment_;
  std::vector<float> centroids_;
  std::vector<std::vector<std::uint32_t>> cells_;
  std::size_t nprobe_ = 0;
  double measured_recall_ = 1.0;
};

inline std::vector<ScoredCandidate> knn_search(const DenseIndex& index,
                                               std::span<const float> query,
                                               std::size_t k = kDefaultTopK) {
  return index.search(query, k);
}

/// Full scan with a full sort. Kept separate from DenseIndex so it can serve
/// as the oracle for exact search.
std::vector<ScoredCandidate> brute_force_search(const VectorTable& table,
                                                std::span<const float> query,
                                                std::size_t k = kDefaultTopK);

}  // namespace elcand
