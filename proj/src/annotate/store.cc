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

#include "prscrub/annotate/store.h"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>

#include "prscrub/error.h"
#include "prscrub/manifest.h"

namespace prscrub::annotate {

namespace {

[[noreturn]] void Corrupt(const std::filesystem::path& path, std::size_t line,
                          const std::string& what) {
  throw Error(ErrorCode::kCorruptStore,
              path.string() + ":" + std::to_string(line) + ": " + what);
}

bool SameRating(const RatingRecord& a, const RatingRecord& b) {
  return a.relevance == b.relevance && a.descriptiveness == b.descriptiveness &&
         a.clarity == b.clarity;
}

}  // namespace

std::string RecordChecksum(const std::string& compact_record) {
  return Sha256Hex(compact_record).substr(0, 16);
}

OrderedJson RatingToJson(const RatingRecord& r) {
  OrderedJson j;
  j["type"] = "rating";
  j["sample_id"] = r.sample_id;
  j["rater_id"] = r.rater_id;
  j["arm"] = r.arm;
  j["relevance"] = r.relevance;
  j["descriptiveness"] = r.descriptiveness;
  j["clarity"] = r.clarity;
  j["timestamp"] = r.timestamp;
  return j;
}

RatingRecord RatingFromJson(const Json& j) {
  RatingRecord r;
  r.sample_id = j.at("sample_id").get<std::string>();
  r.rater_id = j.at("rater_id").get<std::string>();
  r.arm = j.at("arm").get<std::string>();
  r.relevance = j.at("relevance").get<int>();
  r.descriptiveness = j.at("descriptiveness").get<int>();
  r.clarity = j.at("clarity").get<int>();
  r.timestamp = j.value("timestamp", "");
  return r;
}

OrderedJson LabelToJson(const NoiseLabel& l) {
  OrderedJson j;
  j["type"] = "label";
  j["sample_id"] = l.sample_id;
  j["heuristic"] = l.heuristic;
  j["rater_id"] = l.rater_id;
  j["verdict"] = VerdictName(l.verdict);
  j["timestamp"] = l.timestamp;
  return j;
}

NoiseLabel LabelFromJson(const Json& j) {
  NoiseLabel l;
  l.sample_id = j.at("sample_id").get<std::string>();
  l.heuristic = j.at("heuristic").get<std::string>();
  l.rater_id = j.at("rater_id").get<std::string>();
  l.verdict = ParseVerdict(j.at("verdict").get<std::string>());
  l.timestamp = j.value("timestamp", "");
  return l;
}

std::string JudgmentStore::RatingKey(const RatingRecord& r) {
  return r.sample_id + '\x1f' + r.rater_id + '\x1f' + r.arm;
}

std::string JudgmentStore::LabelKey(const NoiseLabel& l) {
  return l.sample_id + '\x1f' + l.heuristic + '\x1f' + l.rater_id;
}

JudgmentStore::JudgmentStore(JudgmentStore&& other) noexcept
    : path_(std::move(other.path_)),
      ratings_(std::move(other.ratings_)),
      labels_(std::move(other.labels_)),
      rating_index_(std::move(other.rating_index_)),
      label_index_(std::move(other.label_index_)),
      skipped_lines_(other.skipped_lines_) {}

JudgmentStore JudgmentStore::Open(const std::filesystem::path& path, bool strict) {
  JudgmentStore store(path);
  if (!std::filesystem::exists(path)) return store;

  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    ++line_no;
    const std::size_t end = content.find('\n', start);
    const bool torn = end == std::string::npos;
    const std::string line =
        content.substr(start, torn ? std::string::npos : end - start);
    start = torn ? content.size() : end + 1;
    try {
      if (torn) Corrupt(path, line_no, "unterminated final line (torn write)");
      Json wrapper;
      try {
        wrapper = Json::parse(line);
      } catch (const Json::exception& e) {
        Corrupt(path, line_no, e.what());
      }
      if (!wrapper.is_object() || !wrapper.contains("record") ||
          !wrapper.contains("checksum")) {
        Corrupt(path, line_no, "missing record or checksum");
      }
      // Re-serialize with preserved key order to verify the checksum.
      const OrderedJson record = OrderedJson::parse(line).at("record");
      if (RecordChecksum(record.dump()) != wrapper.at("checksum")) {
        Corrupt(path, line_no, "checksum mismatch");
      }
      try {
        store.Ingest(wrapper.at("record"));
      } catch (const std::exception& e) {
        Corrupt(path, line_no, e.what());
      }
    } catch (const Error& e) {
      if (strict) throw;
      ++store.skipped_lines_;
    }
  }
  return store;
}

void JudgmentStore::Ingest(const Json& record) {
  const std::string type = record.at("type").get<std::string>();
  if (type == "rating") {
    RatingRecord r = RatingFromJson(record);
    const std::string key = RatingKey(r);
    if (!rating_index_.count(key)) {
      rating_index_.emplace(key, ratings_.size());
      ratings_.push_back(std::move(r));
    }
  } else if (type == "label") {
    NoiseLabel l = LabelFromJson(record);
    const std::string key = LabelKey(l);
    if (!label_index_.count(key)) {
      label_index_.emplace(key, labels_.size());
      labels_.push_back(std::move(l));
    }
  } else {
    throw Error(ErrorCode::kParseError, "unknown record type '" + type + "'");
  }
}

void JudgmentStore::AppendLine(const OrderedJson& record) {
  OrderedJson wrapper;
  wrapper["record"] = record;
  wrapper["checksum"] = RecordChecksum(record.dump());
  const std::string line = wrapper.dump() + "\n";

  const int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) {
    throw Error(ErrorCode::kIoError, "open " + path_.string() + ": " + std::strerror(errno));
  }
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      const int err = errno;
      ::close(fd);
      throw Error(ErrorCode::kIoError, "write " + path_.string() + ": " + std::strerror(err));
    }
    written += static_cast<std::size_t>(n);
  }
  const int sync_rc = ::fsync(fd);
  ::close(fd);
  if (sync_rc != 0) throw Error(ErrorCode::kIoError, "fsync " + path_.string());
}

AppendResult JudgmentStore::AppendRating(RatingRecord record) {
  std::lock_guard lock(mu_);
  const std::string key = RatingKey(record);
  if (const auto it = rating_index_.find(key); it != rating_index_.end()) {
    return SameRating(ratings_[it->second], record) ? AppendResult::kDuplicate
                                                    : AppendResult::kConflict;
  }
  if (record.timestamp.empty()) record.timestamp = UtcTimestamp();
  AppendLine(RatingToJson(record));
  rating_index_.emplace(key, ratings_.size());
  ratings_.push_back(std::move(record));
  return AppendResult::kStored;
}

AppendResult JudgmentStore::AppendLabel(NoiseLabel label) {
  std::lock_guard lock(mu_);
  const std::string key = LabelKey(label);
  if (const auto it = label_index_.find(key); it != label_index_.end()) {
    return labels_[it->second].verdict == label.verdict ? AppendResult::kDuplicate
                                                        : AppendResult::kConflict;
  }
  if (label.timestamp.empty()) label.timestamp = UtcTimestamp();
  AppendLine(LabelToJson(label));
  label_index_.emplace(key, labels_.size());
  labels_.push_back(std::move(label));
  return AppendResult::kStored;
}

std::vector<RatingRecord> JudgmentStore::ratings() const {
  std::lock_guard lock(mu_);
  return ratings_;
}

std::vector<NoiseLabel> JudgmentStore::labels() const {
  std::lock_guard lock(mu_);
  return labels_;
}

}  // namespace prscrub::annotate
