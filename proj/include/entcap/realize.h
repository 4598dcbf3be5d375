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

#ifndef ENTCAP_REALIZE_H_
#define ENTCAP_REALIZE_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entcap/date.h"
#include "entcap/qcv.h"
#include "entcap/templatize.h"

namespace entcap {

struct ImageMeta {
  std::optional<Date> exif_date;
  // Carried through; no realization rule uses it.
  std::optional<std::pair<double, double>> geo;
};

// Joins tokens with single spaces, except none before . , ! ? ; : and none
// after an opening quote (`` “ ‘, or an odd-numbered plain ").
std::string Detokenize(const std::vector<std::string> &tokens);

// Word used in place of a slot that could not be filled.
std::string GenericWord(const SlotType &type);

// Renders a template with the chosen candidate names. Slots listed as
// unfillable become GenericWord(type). Throws ContractError when the
// assignment names a position that is not a slot, or leaves a slot neither
// chosen nor unfillable.
std::string Fill(const Template &tmpl, const Assignment &assignment);

// Appends " on <Month> <D> <YYYY>" before the terminal punctuation (adding a
// period if there is none). Unchanged when the date is missing or the
// caption already carries such a suffix.
std::string AppendDate(std::string_view caption, const ImageMeta &meta);

}  // namespace entcap

#endif  // ENTCAP_REALIZE_H_
