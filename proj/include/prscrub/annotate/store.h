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

#ifndef PRSCRUB_ANNOTATE_STORE_H_
#define PRSCRUB_ANNOTATE_STORE_H_

#include <cstddef>
#include <filesystem>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "prscrub/evalstats.h"
#include "prscrub/jsonl.h"

namespace prscrub::annotate {

struct NoiseLabel {
  std::string sample_id;
  std::string heuristic;
  std::string rater_id;
  Verdict verdict = Verdict::kTruePositive;
  std::string timestamp;
};

enum class AppendResult { kStored, kDuplicate, kConflict };

// Append-only JSONL judgment log. Each line is
//   {"record":{...},"checksum":"<sha256(record)[0:16]>"}
// and is flushed to disk before Append* returns. One logical record per key:
// (sample, rater, arm) for ratings, (sample, heuristic, rater) for labels.
class JudgmentStore {
 public:
  // Loads an existing store (or starts an empty one). In strict mode any bad
  // line throws CorruptStore; otherwise bad lines are skipped and counted.
  static JudgmentStore Open(const std::filesystem::path& path, bool strict = true);

  JudgmentStore(JudgmentStore&& other) noexcept;

  AppendResult AppendRating(RatingRecord record);
  AppendResult AppendLabel(NoiseLabel label);

  // Snapshots taken under the writer lock.
  std::vector<RatingRecord> ratings() const;
  std::vector<NoiseLabel> labels() const;
  std::size_t skipped_lines() const { return skipped_lines_; }

  static std::string RatingKey(const RatingRecord& r);
  static std::string LabelKey(const NoiseLabel& l);

 private:
  explicit JudgmentStore(std::filesystem::path path) : path_(std::move(path)) {}

  void Ingest(const Json& record);
  void AppendLine(const OrderedJson& record);

  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::vector<RatingRecord> ratings_;
  std::vector<NoiseLabel> labels_;
  std::unordered_map<std::string, std::size_t> rating_index_;
  std::unordered_map<std::string, std::size_t> label_index_;
  std::size_t skipped_lines_ = 0;
};

OrderedJson RatingToJson(const RatingRecord& r);
RatingRecord RatingFromJson(const Json& j);
OrderedJson LabelToJson(const NoiseLabel& l);
NoiseLabel LabelFromJson(const Json& j);

// Checksum over a record's compact serialization.
std::string RecordChecksum(const std::string& compact_record);

}  // namespace prscrub::annotate

#endif  // PRSCRUB_ANNOTATE_STORE_H_
