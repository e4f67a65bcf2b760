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

namespace elcand {

struct NormalizationConfig {
  bool case_fold = true;
  bool collapse_whitespace = true;
  bool strip_outer_punct = false;

  bool operator==(const NormalizationConfig&) const = default;
};

/// Case fold, collapse internal whitespace runs to one space, trim, and
/// optionally strip leading/trailing punctuation, in that order.
/// Idempotent under every config.
std::string normalize_surface(std::string_view s,
                              const NormalizationConfig& config = {});

}  // namespace elcand
