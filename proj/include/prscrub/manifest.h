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

#ifndef PRSCRUB_MANIFEST_H_
#define PRSCRUB_MANIFEST_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "prscrub/jsonl.h"

namespace prscrub {

inline constexpr std::string_view kToolVersion = "0.3.0";

std::string Sha256Hex(std::string_view bytes);
std::string Sha256File(const std::filesystem::path& path);

// Provenance record written next to every artifact a command produces.
class RunManifest {
 public:
  RunManifest(std::string command, std::vector<std::string> argv);

  void SetConfig(OrderedJson config) { config_ = std::move(config); }
  void AddInput(const std::filesystem::path& path);
  void AddOutput(const std::filesystem::path& path);

  // Stamps finished_at and writes JSON to `path`.
  void Write(const std::filesystem::path& path);

  OrderedJson ToJson() const;

 private:
  std::string command_;
  std::vector<std::string> argv_;
  OrderedJson config_ = OrderedJson::object();
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::pair<std::string, std::string>> outputs_;
  std::string started_at_;
  std::string finished_at_;
};

// Conventional manifest location for an artifact.
std::filesystem::path ManifestPathFor(const std::filesystem::path& artifact);

// The manifest with timestamps removed, for reproducibility comparisons.
Json StripTimestamps(Json manifest);

std::string UtcTimestamp();

}  // namespace prscrub

#endif  // PRSCRUB_MANIFEST_H_
