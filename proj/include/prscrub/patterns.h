// Copyright 2026 The prscrub Authors.
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

#ifndef PRSCRUB_PATTERNS_H_
#define PRSCRUB_PATTERNS_H_

#include <map>
#include <memory>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace prscrub {

// One table row: a leading word and an optional regex that must follow it.
struct PatternEntry {
  std::string starts_with;
  std::string continuation;  // ECMAScript regex; empty means "anything"

  bool operator==(const PatternEntry&) const = default;
};

// Case-insensitive prefix matcher over a list of PatternEntry rows. Each row
// compiles to ^(?:starts_with)\b\s*(?:continuation) and is tried against the
// trimmed, lowercased text.
class PatternSet {
 public:
  PatternSet() = default;
  PatternSet(std::string name, std::vector<PatternEntry> entries);

  bool Matches(std::string_view text) const;

  const std::string& name() const { return name_; }
  const std::vector<PatternEntry>& entries() const { return entries_; }

 private:
  std::string name_;
  std::vector<PatternEntry> entries_;
  std::vector<std::regex> compiled_;
};

// Everything the heuristics read from a patterns file.
struct PatternConfig {
  std::vector<PatternEntry> commit;       // trivial commit messages
  std::vector<PatternEntry> description;  // trivial descriptions
  std::map<std::string, std::string> rules;  // "H1".."H4" -> rule text

  bool operator==(const PatternConfig&) const = default;
};

// The built-in tables, as TOML text.
std::string_view DefaultPatternsToml();
const PatternConfig& DefaultPatternConfig();

// Parses the small TOML subset used by pattern files: comments, [table],
// [[array-of-tables]] headers and `key = "string"` pairs. Throws
// InvalidConfig on anything else.
PatternConfig ParsePatternConfig(std::string_view toml);
PatternConfig LoadPatternConfig(const std::string& path);

}  // namespace prscrub

#endif  // PRSCRUB_PATTERNS_H_
