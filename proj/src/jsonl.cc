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

#include "prscrub/jsonl.h"

#include <utility>

namespace prscrub {

namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kParseError, what);
}

std::string GetString(const Json& j, const char* key) {
  auto it = j.find(key);
  Require(it != j.end() && it->is_string(),
          std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

std::vector<std::string> GetStringArray(const Json& j, const char* key) {
  auto it = j.find(key);
  Require(it != j.end() && it->is_array(),
          std::string("field '") + key + "' must be an array of strings");
  std::vector<std::string> out;
  out.reserve(it->size());
  for (const auto& v : *it) {
    Require(v.is_string(),
            std::string("field '") + key + "' must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

OrderedJson ToJson(const RawPullRequest& pr) {
  OrderedJson j;
  j["repo"] = pr.repo;
  j["number"] = pr.number;
  j["title"] = pr.title;
  j["body"] = pr.body;
  j["commits"] = pr.commits;
  j["author_is_bot"] = pr.author_is_bot;
  j["url"] = pr.url;
  j["commits_truncated"] = pr.commits_truncated;
  if (!pr.state.empty()) j["state"] = pr.state;
  return j;
}

RawPullRequest RawPullRequestFromJson(const Json& j) {
  Require(j.is_object(), "record must be a JSON object");
  RawPullRequest pr;
  pr.repo = GetString(j, "repo");
  Require(!pr.repo.empty(), "field 'repo' must be nonempty");
  auto number = j.find("number");
  Require(number != j.end() && number->is_number_integer(),
          "field 'number' must be an integer");
  pr.number = number->get<std::int64_t>();
  Require(pr.number >= 1, "field 'number' must be >= 1");
  pr.title = GetString(j, "title");
  pr.body = GetString(j, "body");
  pr.commits = GetStringArray(j, "commits");
  auto bot = j.find("author_is_bot");
  Require(bot != j.end() && bot->is_boolean(),
          "field 'author_is_bot' must be a boolean");
  pr.author_is_bot = bot->get<bool>();
  pr.url = GetString(j, "url");
  if (auto t = j.find("commits_truncated"); t != j.end()) {
    Require(t->is_boolean(), "field 'commits_truncated' must be a boolean");
    pr.commits_truncated = t->get<bool>();
  }
  if (j.contains("state")) pr.state = GetString(j, "state");
  return pr;
}

OrderedJson ToJson(const PrSample& sample) {
  OrderedJson j;
  j["id"] = sample.id;
  j["input_sequence"] = sample.input_sequence;
  j["reference_description"] = sample.reference_description;
  return j;
}

PrSample PrSampleFromJson(const Json& j) {
  Require(j.is_object(), "sample must be a JSON object");
  return MakeSample(GetString(j, "id"), GetStringArray(j, "input_sequence"),
                    GetString(j, "reference_description"));
}

void ThrowParse(const std::filesystem::path& path, std::size_t line,
                const std::string& what) {
  throw Error(ErrorCode::kParseError,
              path.string() + ":" + std::to_string(line) + ": " + what);
}

JsonlReader::JsonlReader(const std::filesystem::path& path)
    : path_(path), in_(path, std::ios::binary) {
  if (!in_) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
}

bool JsonlReader::Next(Json& out) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      out = Json::parse(line);
    } catch (const Json::exception& e) {
      ThrowParse(path_, line_number_, e.what());
    }
    return true;
  }
  if (in_.bad()) throw Error(ErrorCode::kIoError, "read failed: " + path_.string());
  return false;
}

std::vector<RawPullRequest> ReadJsonl(const std::filesystem::path& path) {
  return ReadJsonlAs<RawPullRequest>(path, RawPullRequestFromJson);
}

std::vector<PrSample> ReadSamples(const std::filesystem::path& path) {
  return ReadJsonlAs<PrSample>(path, PrSampleFromJson);
}

void WriteJsonLines(const std::vector<OrderedJson>& lines,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  for (const auto& j : lines) out << j.dump() << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

std::size_t WriteJsonl(const std::vector<RawPullRequest>& records,
                       const std::filesystem::path& path) {
  std::vector<OrderedJson> lines;
  lines.reserve(records.size());
  for (const auto& r : records) lines.push_back(ToJson(r));
  WriteJsonLines(lines, path);
  return records.size();
}

std::size_t WriteSamples(const std::vector<PrSample>& samples,
                         const std::filesystem::path& path) {
  std::vector<OrderedJson> lines;
  lines.reserve(samples.size());
  for (const auto& s : samples) lines.push_back(ToJson(s));
  WriteJsonLines(lines, path);
  return samples.size();
}

void WriteJsonFile(const OrderedJson& value, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << value.dump(2) << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

Json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

}  // namespace prscrub
