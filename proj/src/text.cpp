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

#include "elcand/text.hpp"

#include <string>

#include "elcand/error.hpp"

namespace elcand::text {

namespace {

// Returns the scalar value at s[pos] and advances pos; throws on bad input.
char32_t next_cp(std::string_view s, std::size_t& pos) {
  const auto lead = static_cast<unsigned char>(s[pos]);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  int extra = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
    min = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
    min = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
    min = 0x10000;
  } else {
    fail(ErrorCode::kParse,
         "invalid UTF-8 lead byte at offset " + std::to_string(pos));
  }
  if (pos + static_cast<std::size_t>(extra) >= s.size()) {
    fail(ErrorCode::kParse,
         "truncated UTF-8 sequence at offset " + std::to_string(pos));
  }
  for (int i = 1; i <= extra; ++i) {
    const auto c = static_cast<unsigned char>(s[pos + i]);
    if ((c & 0xC0) != 0x80) {
      fail(ErrorCode::kParse,
           "invalid UTF-8 continuation at offset " + std::to_string(pos + i));
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    fail(ErrorCode::kParse,
         "invalid UTF-8 scalar value at offset " + std::to_string(pos));
  }
  pos += static_cast<std::size_t>(extra) + 1;
  return cp;
}

bool in(char32_t cp, char32_t lo, char32_t hi) { return cp >= lo && cp <= hi; }

}  // namespace

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) out.push_back(next_cp(s, pos));
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append_utf8(out, cp);
  return out;
}

std::size_t length_utf8(std::string_view s) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < s.size()) {
    next_cp(s, pos);
    ++n;
  }
  return n;
}

std::size_t byte_offset(std::string_view s, std::size_t cp_index) {
  std::size_t pos = 0;
  for (std::size_t i = 0; i < cp_index; ++i) {
    if (pos >= s.size()) {
      fail(ErrorCode::kInvalidArgument,
           "character offset " + std::to_string(cp_index) +
               " beyond end of text");
    }
    next_cp(s, pos);
  }
  return pos;
}

bool is_space(char32_t cp) {
  return in(cp, 0x09, 0x0D) || cp == 0x20 || cp == 0x85 || cp == 0xA0 ||
         cp == 0x1680 || in(cp, 0x2000, 0x200A) || cp == 0x2028 ||
         cp == 0x2029 || cp == 0x202F || cp == 0x205F || cp == 0x3000;
}

bool is_punct(char32_t cp) {
  if (cp < 0x80) {
    return in(cp, 0x21, 0x2F) || in(cp, 0x3A, 0x40) || in(cp, 0x5B, 0x60) ||
           in(cp, 0x7B, 0x7E);
  }
  if (cp < 0x100) {
    return (in(cp, 0xA1, 0xBF) && cp != 0xAA && cp != 0xB5 && cp != 0xBA) ||
           cp == 0xD7 || cp == 0xF7;
  }
  return in(cp, 0x2010, 0x2027) || in(cp, 0x2030, 0x205E) ||
         in(cp, 0x2E00, 0x2E7F) || in(cp, 0x3001, 0x3003) ||
         in(cp, 0x3008, 0x3011) || in(cp, 0xFF01, 0xFF0F) ||
         in(cp, 0xFF1A, 0xFF20);
}

bool is_alnum(char32_t cp) {
  if (cp < 0x80) {
    return in(cp, '0', '9') || in(cp, 'a', 'z') || in(cp, 'A', 'Z');
  }
  if (cp < 0x100) {
    return cp == 0xAA || cp == 0xB5 || cp == 0xBA ||
           (cp >= 0xC0 && cp != 0xD7 && cp != 0xF7);
  }
  if (is_space(cp) || is_punct(cp)) return false;
  // Symbol, punctuation, emoji and format-control blocks.
  if (in(cp, 0x2000, 0x2BFF) || in(cp, 0x2E00, 0x2E7F) ||
      in(cp, 0x3000, 0x303F) || in(cp, 0xFE00, 0xFE6F) ||
      in(cp, 0xFF00, 0xFF0F) || in(cp, 0xFF1A, 0xFF20) ||
      in(cp, 0xFF3B, 0xFF40) || in(cp, 0xFF5B, 0xFF65) ||
      in(cp, 0xFFF0, 0xFFFF) || in(cp, 0x1F000, 0x1FAFF) ||
      in(cp, 0xE0000, 0xE007F)) {
    return false;
  }
  return true;
}

char32_t to_lower(char32_t cp) {
  if (cp < 0x80) return in(cp, 'A', 'Z') ? cp + 0x20 : cp;
  if (in(cp, 0xC0, 0xDE) && cp != 0xD7) return cp + 0x20;
  if (cp < 0x100) return cp;
  if (cp <= 0x17F) {
    if (cp == 0x130) return U'i';
    if (cp == 0x178) return 0xFF;
    if (in(cp, 0x100, 0x12F) || in(cp, 0x132, 0x137) ||
        in(cp, 0x14A, 0x177)) {
      return (cp % 2 == 0) ? cp + 1 : cp;
    }
    if (in(cp, 0x139, 0x148) || in(cp, 0x179, 0x17E)) {
      return (cp % 2 == 1) ? cp + 1 : cp;
    }
    return cp;
  }
  if (cp == 0x386) return 0x3AC;
  if (in(cp, 0x388, 0x38A)) return cp + 37;
  if (cp == 0x38C) return 0x3CC;
  if (cp == 0x38E || cp == 0x38F) return cp + 63;
  if (in(cp, 0x391, 0x3A9) && cp != 0x3A2) return cp + 0x20;
  if (in(cp, 0x400, 0x40F)) return cp + 0x50;
  if (in(cp, 0x410, 0x42F)) return cp + 0x20;
  if (in(cp, 0x460, 0x481) || in(cp, 0x48A, 0x4BF)) {
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (in(cp, 0x1E00, 0x1E95) || in(cp, 0x1EA0, 0x1EFF)) {
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (in(cp, 0xFF21, 0xFF3A)) return cp + 0x20;
  return cp;
}

bool is_upper(char32_t cp) { return to_lower(cp) != cp; }

std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) append_utf8(out, to_lower(next_cp(s, pos)));
  return out;
}

std::vector<std::string> word_tokens(std::string_view s) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const char32_t cp = next_cp(s, pos);
    if (is_alnum(cp)) {
      append_utf8(current, to_lower(cp));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

}  // namespace elcand::text
