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

#include <string>
#include <string_view>
#include <vector>

namespace elcand {

enum class Method { kLookup, kDense, kBm25 };

std::string_view to_string(Method method);
Method parse_method(std::string_view s);

struct ScoredCandidate {
  std::string id;
  double score = 0.0;
  Method method = Method::kDense;

  bool operator==(const ScoredCandidate&) const = default;
};

/// Result-list order: score descending, then id ascending.
inline bool ranks_before(const ScoredCandidate& a, const ScoredCandidate& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.id < b.id;
}

}  // namespace elcand
