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

#ifndef PRSCRUB_ANNOTATE_EXPORT_H_
#define PRSCRUB_ANNOTATE_EXPORT_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prscrub/annotate/session.h"
#include "prscrub/annotate/store.h"
#include "prscrub/evalstats.h"

namespace prscrub::annotate {

// Stage-1 ratings with arm A/B replaced by the model that produced it.
// Throws MissingKey when the session carries no sealed key.
std::vector<RatingRecord> UnblindRatings(const Session& session,
                                         const std::vector<RatingRecord>& ratings);

struct Stage2Resolution {
  // Final verdict per (sample_id, heuristic), from unanimous raters or from
  // the reconciliation store.
  std::map<std::pair<std::string, std::string>, Verdict> final_labels;
  // Items where raters disagree and no reconciliation verdict exists yet.
  std::vector<OrderedJson> worksheet;
};

Stage2Resolution ResolveLabels(const std::vector<NoiseLabel>& labels,
                               const std::vector<NoiseLabel>& reconciled);

// One row per heuristic: tp, fp, accuracy (percent), and Cohen's
// kappa between the first two raters (by id) over jointly labeled items,
// or null when fewer than two raters overlap.
OrderedJson AuditTable(
    const std::map<std::pair<std::string, std::string>, Verdict>& final_labels,
    const std::vector<NoiseLabel>& rater_labels);

struct ExportOptions {
  std::filesystem::path out_dir;
  std::optional<std::filesystem::path> reconcile_store;
  bool lenient = false;  // skip corrupt store lines instead of failing
};

// Writes the export bundle for either stage and returns the written paths.
std::vector<std::filesystem::path> UnblindAndExport(
    const Session& session, const std::filesystem::path& store_path,
    const ExportOptions& options);

}  // namespace prscrub::annotate

#endif  // PRSCRUB_ANNOTATE_EXPORT_H_
