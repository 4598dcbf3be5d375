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

#ifndef ENTCAP_TYPESYS_H_
#define ENTCAP_TYPESYS_H_

#include <compare>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace entcap {

// The four name-tagger classes.
enum class CoarseType { kPerson, kLocation, kOrganization, kMiscellaneous };

inline constexpr CoarseType kAllCoarseTypes[] = {
    CoarseType::kPerson, CoarseType::kLocation, CoarseType::kOrganization,
    CoarseType::kMiscellaneous};

// "Person", "Location", "Organization" or "Miscellaneous".
std::string_view CoarseTypeName(CoarseType type);

// Accepts the full names and the CoNLL tags PER/LOC/ORG/MISC, any case.
std::optional<CoarseType> ParseCoarseType(std::string_view name);

// Type name carried by a template slot: either a fine type or a coarse type.
struct SlotType {
  std::string name;

  SlotType() = default;
  explicit SlotType(std::string n) : name(std::move(n)) {}
  explicit SlotType(CoarseType coarse) : name(CoarseTypeName(coarse)) {}

  auto operator<=>(const SlotType &) const = default;
};

struct FineType {
  std::string name;
  CoarseType parent = CoarseType::kMiscellaneous;
  // Position in the hierarchy; 0 is reserved for the coarse roots.
  int depth = 1;
};

// Entity type inventory loaded from a TSV mapping file. Immutable after
// construction.
class TypeSystem {
 public:
  TypeSystem() = default;

  // Parses `entity_name TAB fine_type TAB coarse_type TAB depth` rows.
  // Lines starting with '#' and blank lines are skipped. Throws ParseError
  // for malformed rows and SchemaError for unknown coarse types, reserved
  // depths, or a fine type redeclared with a different parent or depth.
  static TypeSystem Load(std::istream &in, const std::string &source = "");
  static TypeSystem LoadFile(const std::string &path);

  // Registers a row programmatically with the same validation as Load.
  void Add(std::string_view entity_name, const FineType &type);

  // Fine types for the normalized form of `name`, in file order. Empty for
  // unindexed names.
  std::vector<const FineType *> Lookup(std::string_view name) const;

  const FineType *FindFineType(std::string_view name) const;

  // True if `type` names a declared fine type or a coarse type.
  bool IsKnownSlotType(const SlotType &type) const;

  const std::vector<FineType> &fine_types() const { return fine_types_; }

  // Normalized entity name -> indices into fine_types(), file order.
  const std::map<std::string, std::vector<size_t>> &entity_index() const {
    return entity_index_;
  }

  bool empty() const { return entity_index_.empty(); }

 private:
  std::vector<FineType> fine_types_;
  std::map<std::string, size_t, std::less<>> fine_by_name_;
  std::map<std::string, std::vector<size_t>> entity_index_;
};

// Slot type for an entity mention: among the fine types indexed for `name`
// whose parent is `coarse`, the one with minimal depth (earliest row wins a
// tie); the coarse type itself when none match.
SlotType ResolveSlotType(std::string_view name, CoarseType coarse,
                         const TypeSystem &ts);

}  // namespace entcap

#endif  // ENTCAP_TYPESYS_H_
