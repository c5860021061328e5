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

#include "prscrub/patterns.h"

#include <cctype>
#include <fstream>
#include <sstream>
#include <utility>

#include "prscrub/error.h"

namespace prscrub {

namespace {

constexpr std::string_view kDefaultToml = R"toml(# Trivial commit messages (H1). A message is dropped from the input
# sequence when it starts with `starts_with` followed by `continuation`.
# Rows whose continuation is a fixed file name are anchored at the end so
# "Update changelog for X" stays while "Update CHANGELOG.md" goes.

[[commit]]
starts_with = "merge"
continuation = ".*? branch .*? into"

[[commit]]
starts_with = "merge"
continuation = "branch '"

[[commit]]
starts_with = "merge"
continuation = "pull request #\\d+"

[[commit]]
starts_with = "update"
continuation = "\\.?(changelog|gitignore|readme)(\\.[a-z0-9]+)?[.!]?$"

[[commit]]
starts_with = "modify"
continuation = "makefile[.!]?$"

[[commit]]
starts_with = "add"
continuation = "\\.?gitignore[.!]?$"

[[commit]]
starts_with = "closes"
continuation = "#\\d+"

# Trivial descriptions (H2), matched as prefixes.

[[description]]
starts_with = "rolling"
continuation = "up .*|down .*"

[[description]]
starts_with = "roll"
continuation = "engine .*|plugins .*"

[[description]]
starts_with = "merge to"
continuation = ".*"

[[description]]
starts_with = "revert"
continuation = ".*"

[[description]]
starts_with = "update"
continuation = "changelog|gitignore|readme|current master"

[[description]]
starts_with = "fix"
continuation = "issue #\\d+"

[rules]
H1 = "Trivial commit message: matches a boilerplate commit pattern (merge branch, update changelog, closes #N, ...) and carries no information about the change."
H2 = "Trivial description: the description matches a boilerplate pattern (revert ..., fix issue #N, rolling up ..., ...)."
H3 = "Irrelevant description: more than 80% of the description's distinct words never occur in the commit messages."
H4 = "Inadequate input: the commit messages have at most half as many words as the description."
)toml";

std::string ToLowerAscii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  const auto blank = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
           c == '\v';
  };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

[[noreturn]] void ConfigError(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kInvalidConfig,
              "line " + std::to_string(line) + ": " + what);
}

// Parses a TOML basic ("...") or literal ('...') string starting at s[0].
// Returns the value and sets `rest` to whatever follows the closing quote.
std::string ParseString(std::string_view s, std::size_t line,
                        std::string_view& rest) {
  if (s.empty() || (s[0] != '"' && s[0] != '\'')) {
    ConfigError(line, "expected a quoted string");
  }
  const char quote = s[0];
  std::string out;
  std::size_t i = 1;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c == quote) break;
    if (quote == '"' && c == '\\') {
      if (++i >= s.size()) ConfigError(line, "dangling escape");
      switch (s[i]) {
        case '\\': out.push_back('\\'); break;
        case '"': out.push_back('"'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        default: ConfigError(line, std::string("unsupported escape \\") + s[i]);
      }
      continue;
    }
    out.push_back(c);
  }
  if (i >= s.size()) ConfigError(line, "unterminated string");
  rest = s.substr(i + 1);
  return out;
}

}  // namespace

PatternSet::PatternSet(std::string name, std::vector<PatternEntry> entries)
    : name_(std::move(name)), entries_(std::move(entries)) {
  compiled_.reserve(entries_.size());
  for (const auto& e : entries_) {
    std::string source = "^(?:" + e.starts_with + ")\\b\\s*";
    if (!e.continuation.empty()) source += "(?:" + e.continuation + ")";
    try {
      compiled_.emplace_back(source, std::regex::ECMAScript |
                                         std::regex::icase |
                                         std::regex::optimize);
    } catch (const std::regex_error& err) {
      throw Error(ErrorCode::kInvalidConfig,
                  "pattern '" + source + "' in " + name_ + ": " + err.what());
    }
  }
}

bool PatternSet::Matches(std::string_view text) const {
  const std::string folded = ToLowerAscii(Trim(text));
  for (const auto& re : compiled_) {
    if (std::regex_search(folded, re, std::regex_constants::match_continuous)) {
      return true;
    }
  }
  return false;
}

std::string_view DefaultPatternsToml() { return kDefaultToml; }

const PatternConfig& DefaultPatternConfig() {
  static const PatternConfig config = ParsePatternConfig(kDefaultToml);
  return config;
}

PatternConfig ParsePatternConfig(std::string_view toml) {
  PatternConfig config;
  enum class Section { kNone, kCommit, kDescription, kRules } section =
      Section::kNone;
  PatternEntry* entry = nullptr;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < toml.size()) {
    std::size_t end = toml.find('\n', start);
    if (end == std::string_view::npos) end = toml.size();
    std::string_view line = Trim(toml.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;

    if (line.starts_with("[[")) {
      if (!line.ends_with("]]")) ConfigError(line_no, "malformed header");
      const std::string_view name = Trim(line.substr(2, line.size() - 4));
      if (name == "commit") {
        section = Section::kCommit;
        entry = &config.commit.emplace_back();
      } else if (name == "description") {
        section = Section::kDescription;
        entry = &config.description.emplace_back();
      } else {
        ConfigError(line_no, "unknown table array [[" + std::string(name) + "]]");
      }
      continue;
    }
    if (line[0] == '[') {
      if (line.back() != ']') ConfigError(line_no, "malformed header");
      const std::string_view name = Trim(line.substr(1, line.size() - 2));
      if (name != "rules") {
        ConfigError(line_no, "unknown table [" + std::string(name) + "]");
      }
      section = Section::kRules;
      entry = nullptr;
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) ConfigError(line_no, "expected key = value");
    const std::string key(Trim(line.substr(0, eq)));
    std::string_view rest;
    std::string value = ParseString(Trim(line.substr(eq + 1)), line_no, rest);
    rest = Trim(rest);
    if (!rest.empty() && rest[0] != '#') {
      ConfigError(line_no, "trailing characters after value");
    }

    switch (section) {
      case Section::kNone:
        ConfigError(line_no, "key outside of any table");
      case Section::kRules:
        config.rules[key] = std::move(value);
        break;
      case Section::kCommit:
      case Section::kDescription:
        if (key == "starts_with") {
          entry->starts_with = std::move(value);
        } else if (key == "continuation") {
          entry->continuation = std::move(value);
        } else {
          ConfigError(line_no, "unknown key '" + key + "'");
        }
        break;
    }
  }

  for (const auto* list : {&config.commit, &config.description}) {
    for (const auto& e : *list) {
      if (e.starts_with.empty()) {
        throw Error(ErrorCode::kInvalidConfig, "pattern row without starts_with");
      }
    }
  }
  return config;
}

PatternConfig LoadPatternConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParsePatternConfig(buf.str());
}

}  // namespace prscrub
