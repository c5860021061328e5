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

#ifndef PRSCRUB_JSONL_H_
#define PRSCRUB_JSONL_H_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "prscrub/error.h"
#include "prscrub/model.h"

namespace prscrub {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// Canonical corpus encoding: keys in schema order, commits_truncated always
// present, state only when known.
OrderedJson ToJson(const RawPullRequest& pr);
RawPullRequest RawPullRequestFromJson(const Json& j);

// Samples serialize their texts only; tokens are recomputed on read.
OrderedJson ToJson(const PrSample& sample);
PrSample PrSampleFromJson(const Json& j);

// Streams JSON objects from a JSONL file. Blank lines are skipped; any
// malformed line throws ParseError naming the 1-based line number.
class JsonlReader {
 public:
  explicit JsonlReader(const std::filesystem::path& path);

  // Returns false at end of file.
  bool Next(Json& out);
  std::size_t line_number() const { return line_number_; }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t line_number_ = 0;
};

// Parses every line with `convert`; conversion failures are re-thrown as
// ParseError carrying the line number.
template <typename T>
std::vector<T> ReadJsonlAs(const std::filesystem::path& path,
                           const std::function<T(const Json&)>& convert);

std::vector<RawPullRequest> ReadJsonl(const std::filesystem::path& path);
std::size_t WriteJsonl(const std::vector<RawPullRequest>& records,
                       const std::filesystem::path& path);

std::vector<PrSample> ReadSamples(const std::filesystem::path& path);
std::size_t WriteSamples(const std::vector<PrSample>& samples,
                         const std::filesystem::path& path);

// Writes one dump() per line (LF), throwing IoError on failure.
void WriteJsonLines(const std::vector<OrderedJson>& lines,
                    const std::filesystem::path& path);
void WriteJsonFile(const OrderedJson& value, const std::filesystem::path& path);
Json ReadJsonFile(const std::filesystem::path& path);

// Wraps a JSON type/lookup failure into ParseError.
[[noreturn]] void ThrowParse(const std::filesystem::path& path,
                             std::size_t line, const std::string& what);

template <typename T>
std::vector<T> ReadJsonlAs(const std::filesystem::path& path,
                           const std::function<T(const Json&)>& convert) {
  JsonlReader reader(path);
  std::vector<T> out;
  Json j;
  while (reader.Next(j)) {
    try {
      out.push_back(convert(j));
    } catch (const Json::exception& e) {
      ThrowParse(path, reader.line_number(), e.what());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kParseError) throw;
      ThrowParse(path, reader.line_number(), e.detail());
    }
  }
  return out;
}

}  // namespace prscrub

#endif  // PRSCRUB_JSONL_H_
