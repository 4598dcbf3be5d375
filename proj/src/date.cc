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

#include "entcap/date.h"

#include <cstdio>

namespace entcap {

namespace {

constexpr const char *kMonthNames[] = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

bool Digits(std::string_view s) {
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return !s.empty();
}

int ToInt(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

std::optional<Date> ParseDate(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  std::string_view y = text.substr(0, 4), m = text.substr(5, 2),
                   d = text.substr(8, 2);
  if (!Digits(y) || !Digits(m) || !Digits(d)) return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year(ToInt(y)),
                                  std::chrono::month(ToInt(m)),
                                  std::chrono::day(ToInt(d))};
  if (!ymd.ok()) return std::nullopt;
  return Date(ymd);
}

std::string FormatIsoDate(Date date) {
  std::chrono::year_month_day ymd(date);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buf;
}

std::string FormatCaptionDate(Date date) {
  std::chrono::year_month_day ymd(date);
  return std::string(kMonthNames[unsigned(ymd.month()) - 1]) + " " +
         std::to_string(unsigned(ymd.day())) + " " +
         std::to_string(int(ymd.year()));
}

int DaysBetween(Date a, Date b) {
  int diff = (a - b).count();
  return diff < 0 ? -diff : diff;
}

}  // namespace entcap
