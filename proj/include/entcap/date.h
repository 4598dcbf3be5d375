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

#ifndef ENTCAP_DATE_H_
#define ENTCAP_DATE_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace entcap {

using Date = std::chrono::sys_days;

// Strict "YYYY-MM-DD"; nullopt for malformed or impossible dates.
std::optional<Date> ParseDate(std::string_view text);

// "YYYY-MM-DD".
std::string FormatIsoDate(Date date);

// "April 26 2016": English month, unpadded day, no comma.
std::string FormatCaptionDate(Date date);

// Absolute difference in whole days.
int DaysBetween(Date a, Date b);

}  // namespace entcap

#endif  // ENTCAP_DATE_H_
