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

#include "elcand/normalize.hpp"

#include "elcand/text.hpp"

namespace elcand {

std::string normalize_surface(std::string_view s,
                              const NormalizationConfig& config) {
  std::u32string cps = text::decode_utf8(s);
  if (config.case_fold) {
    for (char32_t& cp : cps) cp = text::to_lower(cp);
  }
  if (config.collapse_whitespace) {
    std::u32string collapsed;
    collapsed.reserve(cps.size());
    bool in_space = false;
    for (char32_t cp : cps) {
      if (text::is_space(cp)) {
        in_space = true;
        continue;
      }
      if (in_space && !collapsed.empty()) collapsed.push_back(U' ');
      in_space = false;
      collapsed.push_back(cp);
    }
    cps = std::move(collapsed);
  }
  auto strip = [&](auto&& drop) {
    std::size_t lo = 0;
    std::size_t hi = cps.size();
    while (lo < hi && drop(cps[lo])) ++lo;
    while (hi > lo && drop(cps[hi - 1])) --hi;
    cps = cps.substr(lo, hi - lo);
  };
  strip([](char32_t cp) { return text::is_space(cp); });
  if (config.strip_outer_punct) {
    // Whitespace exposed by removing punctuation is trimmed in the same pass.
    strip([](char32_t cp) { return text::is_space(cp) || text::is_punct(cp); });
  }
  return text::encode_utf8(cps);
}

}  // namespace elcand
