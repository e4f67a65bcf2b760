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

#include "elcand/dense_index.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <random>
#include <unordered_set>

#include "elcand/error.hpp"
#include "elcand/file_util.hpp"
#include "elcand/random.hpp"

namespace elcand {

std::string_view to_string(IndexMode mode) {
  return mode == IndexMode::kExact ? "exact" : "approximate";
}

IndexMode parse_index_mode(std::string_view s) {
  if (s == "exact") return IndexMode::kExact;
  if (s == "approximate") return IndexMode::kApproximate;
  fail(ErrorCode::kInvalidArgument,
       "index mode must be 'exact' or 'approximate', got '" + std::string(s) +
           "'");
}

namespace {

double squared_l2(std::span<const float> a, std::span<const float> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    acc += d * d;
  }
  return acc;
}

struct Hit {
  double score;
  std::uint32_t row;
};

// Bounded top-k over row indices, ordered by (score desc, id asc).
class TopK {
 public:
  TopK(const VectorTable& table, std::size_t k)
      : ids_(table.ids()), k_(k), heap_(Worse{&ids_}) {}

  void offer(double score, std::uint32_t row) {
    if (k_ == 0) return;
    if (heap_.size() < k_) {
      heap_.push({score, row});
    } else if (better({score, row}, heap_.top())) {
      heap_.pop();
      heap_.push({score, row});
    }
  }

  std::vector<ScoredCandidate> take() {
    std::vector<Hit> hits;
    hits.reserve(heap_.size());
    while (!heap_.empty()) {
      hits.push_back(heap_.top());
      heap_.pop();
    }
    std::vector<ScoredCandidate> out;
    out.reserve(hits.size());
    for (auto it = hits.rbegin(); it != hits.rend(); ++it) {
      out.push_back({ids_[it->row], it->score, Method::kDense});
    }
    return out;
  }

 private:
  struct Worse {
    const std::vector<std::string>* ids;
    bool operator()(const Hit& a, const Hit& b) const {
      if (a.score != b.score) return a.score > b.score;
      return (*ids)[a.row] < (*ids)[b.row];
    }
  };

  bool better(const Hit& a, const Hit& b) const { return Worse{&ids_}(a, b); }

  const std::vector<std::string>& ids_;
  std::size_t k_;
  std::priority_queue<Hit, std::vector<Hit>, Worse> heap_;
};

}  // namespace

DenseIndex DenseIndex::build(const VectorTable& table, IndexMode mode,
                             const ApproximateOptions& options) {
  if (table.empty()) {
    fail(ErrorCode::kInvalidArgument, "cannot build a dense index from an empty table");
  }
  DenseIndex index;
  index.table_ = table;
  index.mode_ = mode;
  if (mode == IndexMode::kExact) return index;

  const std::size_t n = table.size();
  const std::size_t dim = table.dim();
  std::size_t nlist = options.nlist != 0
                          ? options.nlist
                          : static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  nlist = std::clamp<std::size_t>(nlist, 1, n);

  std::mt19937_64 rng(options.seed);
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  deterministic_shuffle(order, rng);
  std::vector<float> centroids(nlist * dim);
  for (std::size_t c = 0; c < nlist; ++c) {
    auto row = table.row(order[c]);
    std::copy(row.begin(), row.end(), centroids.begin() + c * dim);
  }

  std::vector<std::uint32_t> assignment(n, 0);
  auto nearest = [&](std::span<const float> v) {
    std::uint32_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < nlist; ++c) {
      const double d = squared_l2(v, {centroids.data() + c * dim, dim});
      if (d < best_d) {
        best_d = d;
        best = static_cast<std::uint32_t>(c);
      }
    }
    return best;
  };
  for (std::size_t iter = 0; iter < std::max<std::size_t>(options.kmeans_iterations, 1); ++iter) {
    bool changed = iter == 0;
    for (std::size_t r = 0; r < n; ++r) {
      const auto c = nearest(table.row(r));
      changed |= c != assignment[r];
      assignment[r] = c;
    }
    std::vector<double> sums(nlist * dim, 0.0);
    std::vector<std::size_t> sizes(nlist, 0);
    for (std::size_t r = 0; r < n; ++r) {
      auto row = table.row(r);
      ++sizes[assignment[r]];
      for (std::size_t d = 0; d < dim; ++d) sums[assignment[r] * dim + d] += row[d];
    }
    for (std::size_t c = 0; c < nlist; ++c) {
      if (sizes[c] == 0) continue;  // empty cell keeps its previous centroid
      for (std::size_t d = 0; d < dim; ++d) {
        centroids[c * dim + d] = static_cast<float>(sums[c * dim + d] / static_cast<double>(sizes[c]));
      }
    }
    if (!changed) break;
  }
  for (std::size_t r = 0; r < n; ++r) assignment[r] = nearest(table.row(r));

  index.assignment_ = std::move(assignment);
  index.centroids_ = std::move(centroids);
  index.nprobe_ = options.nprobe != 0 ? std::min(options.nprobe, nlist)
                                      : std::max<std::size_t>(1, nlist / 4);
  index.rebuild_cells();

  // Held-out recall check against exact search.
  const std::size_t sample = std::min(options.recall_sample, n);
  deterministic_shuffle(order, rng);
  std::size_t found = 0;
  std::size_t expected = 0;
  for (std::size_t q = 0; q < sample; ++q) {
    auto query = table.row(order[q]);
    const auto exact = index.search_exact(query, kDefaultTopK);
    const auto approx = index.search(query, kDefaultTopK);
    std::unordered_set<std::string> got;
    for (const auto& c : approx) got.insert(c.id);
    for (const auto& c : exact) found += got.count(c.id);
    expected += exact.size();
  }
  index.measured_recall_ =
      expected == 0 ? 1.0 : static_cast<double>(found) / static_cast<double>(expected);
  if (index.measured_recall_ < options.recall_floor) {
    fail(ErrorCode::kValidation,
         "approximate index recall@16 " + std::to_string(index.measured_recall_) +
             " is below the configured floor " +
             std::to_string(options.recall_floor) + " (nlist " +
             std::to_string(nlist) + ", nprobe " + std::to_string(index.nprobe_) + ")");
  }
  return index;
}

void DenseIndex::rebuild_cells() {
  const std::size_t nlist = cell_count();
  cells_.assign(nlist, {});
  for (std::size_t r = 0; r < assignment_.size(); ++r) {
    cells_[assignment_[r]].push_back(static_cast<std::uint32_t>(r));
  }
}

void DenseIndex::set_nprobe(std::size_t nprobe) {
  if (nprobe == 0) fail(ErrorCode::kInvalidArgument, "nprobe must be positive");
  nprobe_ = std::min(nprobe, std::max<std::size_t>(cell_count(), 1));
}

void DenseIndex::check_query(std::span<const float> query) const {
  if (query.size() != dim()) {
    fail(ErrorCode::kDimMismatch, "query dim " + std::to_string(query.size()) +
                                      " does not match index dim " +
                                      std::to_string(dim()));
  }
}

std::vector<ScoredCandidate> DenseIndex::search_exact(std::span<const float> query,
                                                      std::size_t k) const {
  check_query(query);
  TopK top(table_, k);
  for (std::size_t r = 0; r < table_.size(); ++r) {
    top.offer(dot(query, table_.row(r)), static_cast<std::uint32_t>(r));
  }
  return top.take();
}

std::vector<ScoredCandidate> DenseIndex::search(std::span<const float> query,
                                                std::size_t k) const {
  if (mode_ == IndexMode::kExact) return search_exact(query, k);
  check_query(query);
  const std::size_t dim = table_.dim();
  const std::size_t nlist = cell_count();
  std::vector<std::pair<double, std::uint32_t>> cell_order;
  cell_order.reserve(nlist);
  for (std::size_t c = 0; c < nlist; ++c) {
    cell_order.emplace_back(squared_l2(query, {centroids_.data() + c * dim, dim}),
                            static_cast<std::uint32_t>(c));
  }
  const std::size_t probes = std::min(nprobe_, nlist);
  std::partial_sort(cell_order.begin(), cell_order.begin() + static_cast<std::ptrdiff_t>(probes),
                    cell_order.end());
  TopK top(table_, k);
  for (std::size_t p = 0; p < probes; ++p) {
    for (std::uint32_t r : cells_[cell_order[p].second]) {
      top.offer(dot(query, table_.row(r)), r);
    }
  }
  return top.take();
}

void DenseIndex::write(std::ostream& out) const {
  write_vectors(out, table_);
  const auto cells = static_cast<std::uint32_t>(mode_ == IndexMode::kExact ? 0 : cell_count());
  auto put_u32 = [&](std::uint32_t v) {
    const char bytes[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                           static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
    out.write(bytes, 4);
  };
  put_u32(cells);
  if (cells != 0) {
    for (std::uint32_t c : assignment_) put_u32(c);
  }
}

void DenseIndex::save(const std::filesystem::path& path) const {
  write_file_atomic(path, [&](std::ostream& out) { write(out); }, /*binary=*/true);
}

DenseIndex DenseIndex::read(std::istream& in, std::size_t nprobe) {
  DenseIndex index;
  index.table_ = read_vectors(in);
  auto get_u32 = [&](const char* what) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (in.gcount() != 4) {
      fail(ErrorCode::kParse, std::string("truncated index file while reading ") + what);
    }
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  };
  const std::uint32_t cells = get_u32("cell count");
  if (index.table_.empty()) {
    fail(ErrorCode::kInvalidArgument, "index file holds no vectors");
  }
  if (cells == 0) return index;

  const std::size_t n = index.table_.size();
  const std::size_t dim = index.table_.dim();
  index.mode_ = IndexMode::kApproximate;
  index.assignment_.resize(n);
  for (auto& a : index.assignment_) {
    a = get_u32("cell assignment");
    if (a >= cells) fail(ErrorCode::kParse, "cell id out of range in index file");
  }
  // Centroids are not stored; they are the means of their cells.
  std::vector<double> sums(static_cast<std::size_t>(cells) * dim, 0.0);
  std::vector<std::size_t> sizes(cells, 0);
  for (std::size_t r = 0; r < n; ++r) {
    auto row = index.table_.row(r);
    ++sizes[index.assignment_[r]];
    for (std::size_t d = 0; d < dim; ++d) sums[index.assignment_[r] * dim + d] += row[d];
  }
  index.centroids_.assign(static_cast<std::size_t>(cells) * dim, 0.0f);
  for (std::size_t c = 0; c < cells; ++c) {
    if (sizes[c] == 0) continue;
    for (std::size_t d = 0; d < dim; ++d) {
      index.centroids_[c * dim + d] = static_cast<float>(sums[c * dim + d] / static_cast<double>(sizes[c]));
    }
  }
  index.rebuild_cells();
  index.nprobe_ = nprobe != 0 ? std::min<std::size_t>(nprobe, cells)
                              : std::max<std::size_t>(1, cells / 4);
  index.measured_recall_ = std::numeric_limits<double>::quiet_NaN();
  return index;
}

DenseIndex DenseIndex::load(const std::filesystem::path& path, std::size_t nprobe) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open index file " + path.string());
  return read(in, nprobe);
}

std::vector<ScoredCandidate> brute_force_search(const VectorTable& table,
                                                std::span<const float> query,
                                                std::size_t k) {
  if (query.size() != table.dim()) {
    fail(ErrorCode::kDimMismatch, "query dim " + std::to_string(query.size()) +
                                      " does not match table dim " +
                                      std::to_string(table.dim()));
  }
  std::vector<ScoredCandidate> all;
  all.reserve(table.size());
  for (std::size_t r = 0; r < table.size(); ++r) {
    auto row = table.row(r);
    double s = 0.0;
    for (std::size_t d = 0; d < row.size(); ++d) {
      s += static_cast<double>(query[d]) * static_cast<double>(row[d]);
    }
    all.push_back({table.ids()[r], s, Method::kDense});
  }
  std::sort(all.begin(), all.end(), ranks_before);
  if (all.size() > k) all.resize(k);
  return all;
}

}  // namespace elcand
