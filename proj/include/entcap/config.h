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

#ifndef ENTCAP_CONFIG_H_
#define ENTCAP_CONFIG_H_

#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace entcap {

// Pipeline settings. Config files are flat "key = value" lines with '#'
// comments; command-line flags override file values.
struct PipelineConfig {
  int window_days = 7;
  int tag_freq_cap = 200;
  int top_k = 5;
  std::set<std::string> relation_whitelist;  // filled by the constructor
  bool allow_duplicates = true;
  std::optional<int> beam_width;  // unset: exhaustive search
  int max_exhaustive_slots = 8;
  int min_caption_tokens = 10;
  double fuzzy_threshold = 0.5;

  PipelineConfig();

  // Applies one setting by name. Throws SchemaError for unknown keys and
  // unparsable or out-of-range values.
  void Set(std::string_view key, std::string_view value);

  // Throws SchemaError if any field is out of range.
  void Validate() const;
};

// Throws ParseError (with line) for lines without '=', SchemaError for bad
// keys or values.
PipelineConfig LoadConfig(std::istream &in, const std::string &source = "");
PipelineConfig LoadConfigFile(const std::string &path);

}  // namespace entcap

#endif  // ENTCAP_CONFIG_H_
