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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace elcand {

enum class DescriptionMode { kLong, kShort };

std::string_view to_string(DescriptionMode mode);
DescriptionMode parse_description_mode(std::string_view s);

/// One knowledge-base record. Ids are opaque and never parsed.
struct Entity {
  std::string id;
  std::string title;
  std::string long_description;
  std::string short_description;
  std::vector<std::string> aliases;
  std::vector<std::string> type_tags;
  double pagerank = 0.0;
  std::int64_t link_count = 0;

  bool operator==(const Entity&) const = default;
};

/// Immutable id-keyed entity collection. Iteration order is ascending id, so
/// two stores built from the same records compare equal regardless of the
/// order the records arrived in.
class EntityStore {
 public:
  EntityStore() = default;
  explicit EntityStore(std::vector<Entity> entities,
                       DescriptionMode mode = DescriptionMode::kLong);

  std::size_t size() const { return entities_.size(); }
  bool empty() const { return entities_.empty(); }
  std::span<const Entity> entities() const { return entities_; }
  DescriptionMode description_mode() const { return mode_; }

  const Entity* find(std::string_view id) const;
  /// Throws Error(kNotFound) for ids not in the store.
  const Entity& at(std::string_view id) const;

  bool operator==(const EntityStore& other) const {
    return mode_ == other.mode_ && entities_ == other.entities_;
  }

 private:
  std::vector<Entity> entities_;
  std::unordered_map<std::string, std::size_t> by_id_;
  DescriptionMode mode_ = DescriptionMode::kLong;
};

struct TypeFilter {
  std::set<std::string> denylist;
};

/// Reads one JSON object per line. Blank lines are skipped. Errors name the
/// 1-based line number.
EntityStore load_entities(std::istream& in);
EntityStore load_entities_file(const std::filesystem::path& path);

void write_entities(std::ostream& out, const EntityStore& store);

/// One type tag per line; '#' starts a comment.
TypeFilter load_denylist(std::istream& in);
TypeFilter load_denylist_file(const std::filesystem::path& path);

/// Keeps the entities whose type tags are disjoint from the denylist.
EntityStore apply_type_filter(const EntityStore& store, const TypeFilter& filter);

/// Returns the requested description verbatim (possibly empty).
const std::string& get_description(const EntityStore& store,
                                   std::string_view id, DescriptionMode mode);

}  // namespace elcand
