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

#include "elcand/kb_store.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "elcand/error.hpp"
#include "elcand/normalize.hpp"

namespace elcand {

using nlohmann::json;

std::string_view to_string(DescriptionMode mode) {
  return mode == DescriptionMode::kLong ? "long" : "short";
}

DescriptionMode parse_description_mode(std::string_view s) {
  if (s == "long") return DescriptionMode::kLong;
  if (s == "short") return DescriptionMode::kShort;
  fail(ErrorCode::kInvalidArgument,
       "description mode must be 'long' or 'short', got '" + std::string(s) +
           "'");
}

EntityStore::EntityStore(std::vector<Entity> entities, DescriptionMode mode)
    : entities_(std::move(entities)), mode_(mode) {
  std::sort(entities_.begin(), entities_.end(),
            [](const Entity& a, const Entity& b) { return a.id < b.id; });
  by_id_.reserve(entities_.size());
  for (std::size_t i = 0; i < entities_.size(); ++i) {
    Entity& e = entities_[i];
    if (e.id.empty()) fail(ErrorCode::kValidation, "entity with empty id");
    if (e.title.empty()) {
      fail(ErrorCode::kValidation, "entity " + e.id + " has an empty title");
    }
    if (!by_id_.emplace(e.id, i).second) {
      fail(ErrorCode::kDuplicate, "duplicate entity id " + e.id);
    }
    // Keep the first spelling of aliases that collide after normalization.
    std::vector<std::string> seen;
    std::vector<std::string> kept;
    for (auto& alias : e.aliases) {
      std::string key = normalize_surface(alias);
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(std::move(key));
      kept.push_back(std::move(alias));
    }
    e.aliases = std::move(kept);
  }
}

const Entity* EntityStore::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &entities_[it->second];
}

const Entity& EntityStore::at(std::string_view id) const {
  const Entity* e = find(id);
  if (e == nullptr) {
    fail(ErrorCode::kNotFound, "unknown entity id " + std::string(id));
  }
  return *e;
}

namespace {

std::string field_error(std::size_t line, const std::string& what) {
  return "entities line " + std::to_string(line) + ": " + what;
}

std::string required_string(const json& rec, const char* key,
                            std::size_t line) {
  auto it = rec.find(key);
  if (it == rec.end() || it->is_null()) {
    fail(ErrorCode::kParse,
         field_error(line, std::string("missing required field '") + key + "'"));
  }
  if (!it->is_string()) {
    fail(ErrorCode::kParse,
         field_error(line, std::string("field '") + key + "' must be a string"));
  }
  auto value = it->get<std::string>();
  if (value.empty()) {
    fail(ErrorCode::kParse,
         field_error(line, std::string("field '") + key + "' is empty"));
  }
  return value;
}

std::string optional_string(const json& rec, const char* key,
                            std::size_t line) {
  auto it = rec.find(key);
  if (it == rec.end() || it->is_null()) return {};
  if (!it->is_string()) {
    fail(ErrorCode::kParse,
         field_error(line, std::string("field '") + key + "' must be a string"));
  }
  return it->get<std::string>();
}

std::vector<std::string> optional_strings(const json& rec, const char* key,
                                          std::size_t line) {
  std::vector<std::string> out;
  auto it = rec.find(key);
  if (it == rec.end() || it->is_null()) return out;
  if (!it->is_array()) {
    fail(ErrorCode::kParse,
         field_error(line, std::string("field '") + key + "' must be an array"));
  }
  for (const auto& v : *it) {
    if (!v.is_string()) {
      fail(ErrorCode::kParse,
           field_error(line,
                       std::string("field '") + key + "' must hold strings"));
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

Entity parse_entity(const std::string& raw, std::size_t line) {
  json rec;
  try {
    rec = json::parse(raw);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParse, field_error(line, e.what()));
  }
  if (!rec.is_object()) {
    fail(ErrorCode::kParse, field_error(line, "record is not an object"));
  }
  Entity e;
  e.id = required_string(rec, "id", line);
  e.title = required_string(rec, "title", line);
  e.long_description = optional_string(rec, "long_description", line);
  e.short_description = optional_string(rec, "short_description", line);
  e.aliases = optional_strings(rec, "aliases", line);
  e.type_tags = optional_strings(rec, "type_tags", line);
  if (auto it = rec.find("pagerank"); it != rec.end() && !it->is_null()) {
    if (!it->is_number() || it->get<double>() < 0.0) {
      fail(ErrorCode::kParse,
           field_error(line, "pagerank must be a non-negative number"));
    }
    e.pagerank = it->get<double>();
  }
  if (auto it = rec.find("link_count"); it != rec.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
      fail(ErrorCode::kParse,
           field_error(line, "link_count must be a non-negative integer"));
    }
    e.link_count = it->get<std::int64_t>();
  }
  return e;
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

EntityStore load_entities(std::istream& in) {
  std::vector<Entity> entities;
  std::unordered_map<std::string, std::size_t> first_line;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (blank(raw)) continue;
    Entity e = parse_entity(raw, line);
    if (auto [it, inserted] = first_line.emplace(e.id, line); !inserted) {
      fail(ErrorCode::kDuplicate,
           field_error(line, "duplicate entity id " + e.id +
                                 " (first seen on line " +
                                 std::to_string(it->second) + ")"));
    }
    entities.push_back(std::move(e));
  }
  return EntityStore(std::move(entities));
}

EntityStore load_entities_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open entities file " + path.string());
  return load_entities(in);
}

void write_entities(std::ostream& out, const EntityStore& store) {
  for (const Entity& e : store.entities()) {
    json rec = {{"id", e.id},
                {"title", e.title},
                {"long_description", e.long_description},
                {"short_description", e.short_description},
                {"aliases", e.aliases},
                {"type_tags", e.type_tags},
                {"pagerank", e.pagerank},
                {"link_count", e.link_count}};
    out << rec.dump() << '\n';
  }
}

TypeFilter load_denylist(std::istream& in) {
  TypeFilter filter;
  std::string raw;
  while (std::getline(in, raw)) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const auto lo = raw.find_first_not_of(" \t\r\n");
    if (lo == std::string::npos) continue;
    const auto hi = raw.find_last_not_of(" \t\r\n");
    filter.denylist.insert(raw.substr(lo, hi - lo + 1));
  }
  return filter;
}

TypeFilter load_denylist_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open denylist file " + path.string());
  return load_denylist(in);
}

EntityStore apply_type_filter(const EntityStore& store,
                              const TypeFilter& filter) {
  std::vector<Entity> kept;
  kept.reserve(store.size());
  for (const Entity& e : store.entities()) {
    const bool denied =
        std::any_of(e.type_tags.begin(), e.type_tags.end(),
                    [&](const std::string& t) { return filter.denylist.count(t) > 0; });
    if (!denied) kept.push_back(e);
  }
  return EntityStore(std::move(kept), store.description_mode());
}

const std::string& get_description(const EntityStore& store,
                                   std::string_view id, DescriptionMode mode) {
  const Entity& e = store.at(id);
  return mode == DescriptionMode::kLong ? e.long_description
                                        : e.short_description;
}

}  // namespace elcand
