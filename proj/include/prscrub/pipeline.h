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

#ifndef PRSCRUB_PIPELINE_H_
#define PRSCRUB_PIPELINE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "prscrub/heuristics.h"

namespace prscrub {

struct SplitSizes {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;

  bool operator==(const SplitSizes&) const = default;
};

// 8:1:1 with val = floor(N/10), test = ceil(N/10), train = the rest.
SplitSizes SplitSizesFor(std::size_t n);

struct SplitAssignment {
  std::uint64_t seed = 0;
  std::vector<std::string> train_ids;
  std::vector<std::string> val_ids;
  std::vector<std::string> test_ids;
};

// Shuffles with Rng(seed) and cuts train | val | test off the permutation.
// Each list is returned in input order.
SplitAssignment Split(const std::vector<std::string>& ids, std::uint64_t seed);

// Uniform sample without replacement, returned in input order. Throws
// SampleTooLarge when n > ids.size().
std::vector<std::size_t> SampleIndices(std::size_t population, std::size_t n,
                                       std::uint64_t seed);
std::vector<std::string> SampleN(const std::vector<std::string>& ids,
                                 std::size_t n, std::uint64_t seed);

inline constexpr std::array<const char*, 4> kHeuristicNames = {"H1", "H2",
                                                                "H3", "H4"};

// Bit i set iff heuristic H(i+1) fired.
unsigned HeuristicMask(const HeuristicFlags& flags);

// "H1+H3" style key for a nonzero mask.
std::string RegionKey(unsigned mask);

struct OverlapReport {
  std::array<std::size_t, 4> per_heuristic{};
  // Index = mask in [1, 15]; slot 0 unused.
  std::array<std::size_t, 16> region_counts{};
  std::size_t total_affected = 0;
  std::size_t sample_count = 0;
  double affected_fraction = 0.0;
};

OverlapReport OverlapStats(const std::vector<HeuristicFlags>& flags);

}  // namespace prscrub

#endif  // PRSCRUB_PIPELINE_H_
