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

// UTF-8 helpers shared by the tokenizers, the surface normalizer and the
// sentence splitter. Character classes come from fixed tables compiled into
// the library, never from the process locale, so every derived value
// (tokens, hashes, embeddings) is identical across machines.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace elcand::text {

/// Decodes UTF-8 into Unicode scalar values. Throws Error(kParse) on
/// malformed input (overlongs, surrogates, truncated sequences).
std::u32string decode_utf8(std::string_view s);

std::string encode_utf8(std::u32string_view cps);
void append_utf8(std::string& out, char32_t cp);

/// Number of scalar values; throws on malformed input like decode_utf8.
std::size_t length_utf8(std::string_view s);

/// Byte offset of the given scalar-value index (index == length is allowed).
std::size_t byte_offset(std::string_view s, std::size_t cp_index);

bool is_space(char32_t cp);
bool is_alnum(char32_t cp);
bool is_upper(char32_t cp);
bool is_punct(char32_t cp);
char32_t to_lower(char32_t cp);

std::string to_lower(std::string_view s);

/// Lowercased maximal runs of alphanumeric scalar values, in text order.
std::vector<std::string> word_tokens(std::string_view s);

}  // namespace elcand::text
