// Copyright 2026 The entcap Authors.
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

#include "entcap/typesys.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "entcap/error.h"
#include "entcap/text.h"

namespace entcap {

std::string_view CoarseTypeName(CoarseType type) {
  switch (type) {
    case CoarseType::kPerson: return "Person";
    case CoarseType::kLocation: return "Location";
    case CoarseType::kOrganization: return "Organization";
    case CoarseType::kMiscellaneous: return "Miscellaneous";
  }
  return "Miscellaneous";
}

std::optional<CoarseType> ParseCoarseType(std::string_view name) {
  std::string key = ToLower(name);
  if (key == "person" || key == "per") return CoarseType::kPerson;
  if (key == "location" || key == "loc") return CoarseType::kLocation;
  if (key == "organization" || key == "org") return CoarseType::kOrganization;
  if (key == "miscellaneous" || key == "misc") {
    return CoarseType::kMiscellaneous;
  }
  return std::nullopt;
}

TypeSystem TypeSystem::Load(std::istream &in, const std::string &source) {
  TypeSystem ts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (CollapseWhitespace(line).empty() || line[0] == '#') continue;

    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() != 4) {
      throw ParseError("expected 4 tab-separated columns, got " +
                           std::to_string(cols.size()),
                       lineno, source);
    }
    std::string name = CollapseWhitespace(cols[0]);
    std::string fine = CollapseWhitespace(cols[1]);
    if (name.empty() || fine.empty()) {
      throw ParseError("empty entity name or fine type", lineno, source);
    }
    int depth = 0;
    std::string depth_text = CollapseWhitespace(cols[3]);
    auto [ptr, ec] = std::from_chars(
        depth_text.data(), depth_text.data() + depth_text.size(), depth);
    if (ec != std::errc() || ptr != depth_text.data() + depth_text.size()) {
      throw ParseError("depth is not an integer: '" + cols[3] + "'", lineno,
                       source);
    }
    auto coarse = ParseCoarseType(CollapseWhitespace(cols[2]));
    if (!coarse) {
      throw SchemaError((source.empty() ? "" : source + ":") + "line " +
                        std::to_string(lineno) + ": unknown coarse type '" +
                        cols[2] + "'");
    }
    try {
      ts.Add(name, FineType{fine, *coarse, depth});
    } catch (const SchemaError &e) {
      throw SchemaError((source.empty() ? "" : source + ":") + "line " +
                        std::to_string(lineno) + ": " + e.what());
    }
  }
  return ts;
}

TypeSystem TypeSystem::LoadFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open type map " + path);
  return Load(in, path);
}

void TypeSystem::Add(std::string_view entity_name, const FineType &type) {
  if (type.depth < 1) {
    throw SchemaError("fine type '" + type.name + "' has depth " +
                      std::to_string(type.depth) +
                      "; depth 0 is reserved for coarse types");
  }
  if (ParseCoarseType(type.name)) {
    throw SchemaError("fine type '" + type.name +
                      "' collides with a coarse type name");
  }
  size_t id;
  auto it = fine_by_name_.find(type.name);
  if (it == fine_by_name_.end()) {
    id = fine_types_.size();
    fine_types_.push_back(type);
    fine_by_name_.emplace(type.name, id);
  } else {
    id = it->second;
    const FineType &known = fine_types_[id];
    if (known.parent != type.parent || known.depth != type.depth) {
      throw SchemaError("fine type '" + type.name +
                        "' redeclared with a different parent or depth");
    }
  }
  std::vector<size_t> &rows = entity_index_[NormalizeName(entity_name)];
  if (std::find(rows.begin(), rows.end(), id) == rows.end()) rows.push_back(id);
}

std::vector<const FineType *> TypeSystem::Lookup(std::string_view name) const {
  std::vector<const FineType *> out;
  auto it = entity_index_.find(NormalizeName(name));
  if (it == entity_index_.end()) return out;
  for (size_t id : it->second) out.push_back(&fine_types_[id]);
  return out;
}

const FineType *TypeSystem::FindFineType(std::string_view name) const {
  auto it = fine_by_name_.find(name);
  return it == fine_by_name_.end() ? nullptr : &fine_types_[it->second];
}

bool TypeSystem::IsKnownSlotType(const SlotType &type) const {
  for (CoarseType c : kAllCoarseTypes) {
    if (CoarseTypeName(c) == type.name) return true;
  }
  return FindFineType(type.name) != nullptr;
}

SlotType ResolveSlotType(std::string_view name, CoarseType coarse,
                         const TypeSystem &ts) {
  const FineType *best = nullptr;
  for (const FineType *fine : ts.Lookup(name)) {
    if (fine->parent != coarse) continue;
    if (best == nullptr || fine->depth < best->depth) best = fine;
  }
  return best != nullptr ? SlotType(best->name) : SlotType(coarse);
}

}  // namespace entcap
