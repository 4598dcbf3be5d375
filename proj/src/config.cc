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

#include "entcap/config.h"

#include <charconv>
#include <fstream>

#include "entcap/error.h"
#include "entcap/templatize.h"
#include "entcap/text.h"

namespace entcap {

namespace {

int ToInt(std::string_view key, std::string_view value) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw SchemaError("config key '" + std::string(key) +
                      "' expects an integer, got '" + std::string(value) + "'");
  }
  return v;
}

bool ToBool(std::string_view key, std::string_view value) {
  std::string v = ToLower(value);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw SchemaError("config key '" + std::string(key) +
                    "' expects true/false, got '" + std::string(value) + "'");
}

}  // namespace

PipelineConfig::PipelineConfig()
    : relation_whitelist(DefaultRelationWhitelist()) {}

void PipelineConfig::Set(std::string_view key, std::string_view raw) {
  std::string value = CollapseWhitespace(raw);
  if (key == "window_days") {
    window_days = ToInt(key, value);
  } else if (key == "tag_freq_cap") {
    tag_freq_cap = ToInt(key, value);
  } else if (key == "top_k") {
    top_k = ToInt(key, value);
  } else if (key == "relation_whitelist") {
    relation_whitelist = ParseRelationList(value);
  } else if (key == "allow_duplicates") {
    allow_duplicates = ToBool(key, value);
  } else if (key == "beam_width") {
    if (value.empty() || ToLower(value) == "none") {
      beam_width.reset();
    } else {
      beam_width = ToInt(key, value);
    }
  } else if (key == "max_exhaustive_slots") {
    max_exhaustive_slots = ToInt(key, value);
  } else if (key == "min_caption_tokens") {
    min_caption_tokens = ToInt(key, value);
  } else if (key == "fuzzy_threshold") {
    try {
      size_t used = 0;
      fuzzy_threshold = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception &) {
      throw SchemaError("config key 'fuzzy_threshold' expects a number, got '" +
                        value + "'");
    }
  } else {
    throw SchemaError("unknown config key '" + std::string(key) + "'");
  }
  Validate();
}

void PipelineConfig::Validate() const {
  auto require = [](bool ok, const char *what) {
    if (!ok) throw SchemaError(what);
  };
  require(window_days >= 0, "window_days must be >= 0");
  require(tag_freq_cap >= 0, "tag_freq_cap must be >= 0");
  require(top_k >= 1, "top_k must be >= 1");
  require(!relation_whitelist.empty(), "relation_whitelist must not be empty");
  require(!beam_width || *beam_width >= 1, "beam_width must be >= 1");
  require(max_exhaustive_slots >= 1, "max_exhaustive_slots must be >= 1");
  require(min_caption_tokens >= 1, "min_caption_tokens must be >= 1");
  require(fuzzy_threshold > 0.0 && fuzzy_threshold <= 1.0,
          "fuzzy_threshold must be in (0, 1]");
}

PipelineConfig LoadConfig(std::istream &in, const std::string &source) {
  PipelineConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string text = CollapseWhitespace(line.substr(0, line.find('#')));
    if (text.empty()) continue;
    size_t eq = text.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'key = value'", lineno, source);
    }
    std::string key = CollapseWhitespace(text.substr(0, eq));
    try {
      config.Set(key, text.substr(eq + 1));
    } catch (const SchemaError &e) {
      throw ParseError(e.what(), lineno, source);
    }
  }
  return config;
}

PipelineConfig LoadConfigFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file", 0, path);
  return LoadConfig(in, path);
}

}  // namespace entcap
