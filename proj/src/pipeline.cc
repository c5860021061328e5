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

#include "prscrub/pipeline.h"

#include <algorithm>
#include <numeric>

#include "prscrub/error.h"
#include "prscrub/rng.h"

namespace prscrub {

SplitSizes SplitSizesFor(std::size_t n) {
  SplitSizes sizes;
  sizes.val = n / 10;
  sizes.test = (n + 9) / 10;
  sizes.train = n - sizes.val - sizes.test;
  return sizes;
}

SplitAssignment Split(const std::vector<std::string>& ids,
                      std::uint64_t seed) {
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.Shuffle(order);

  const SplitSizes sizes = SplitSizesFor(ids.size());
  // 0 = train, 1 = val, 2 = test, indexed by original position.
  std::vector<unsigned char> bucket(ids.size(), 0);
  for (std::size_t k = sizes.train; k < sizes.train + sizes.val; ++k) {
    bucket[order[k]] = 1;
  }
  for (std::size_t k = sizes.train + sizes.val; k < ids.size(); ++k) {
    bucket[order[k]] = 2;
  }

  SplitAssignment out;
  out.seed = seed;
  out.train_ids.reserve(sizes.train);
  out.val_ids.reserve(sizes.val);
  out.test_ids.reserve(sizes.test);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    switch (bucket[i]) {
      case 0: out.train_ids.push_back(ids[i]); break;
      case 1: out.val_ids.push_back(ids[i]); break;
      default: out.test_ids.push_back(ids[i]); break;
    }
  }
  return out;
}

std::vector<std::size_t> SampleIndices(std::size_t population, std::size_t n,
                                       std::uint64_t seed) {
  if (n > population) {
    throw Error(ErrorCode::kSampleTooLarge,
                "requested " + std::to_string(n) + " of " +
                    std::to_string(population));
  }
  std::vector<std::size_t> order(population);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  // Partial Fisher-Yates: the first n slots end up a uniform n-subset.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.Below(population - i));
    std::swap(order[i], order[j]);
  }
  order.resize(n);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<std::string> SampleN(const std::vector<std::string>& ids,
                                 std::size_t n, std::uint64_t seed) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i : SampleIndices(ids.size(), n, seed)) out.push_back(ids[i]);
  return out;
}

unsigned HeuristicMask(const HeuristicFlags& flags) {
  return (flags.h1() ? 1u : 0u) | (flags.h2 ? 2u : 0u) | (flags.h3 ? 4u : 0u) |
         (flags.h4 ? 8u : 0u);
}

std::string RegionKey(unsigned mask) {
  std::string key;
  for (unsigned i = 0; i < kHeuristicNames.size(); ++i) {
    if (mask & (1u << i)) {
      if (!key.empty()) key += '+';
      key += kHeuristicNames[i];
    }
  }
  return key;
}

OverlapReport OverlapStats(const std::vector<HeuristicFlags>& flags) {
  OverlapReport report;
  report.sample_count = flags.size();
  for (const auto& f : flags) {
    const unsigned mask = HeuristicMask(f);
    if (mask == 0) continue;
    ++report.region_counts[mask];
    ++report.total_affected;
    for (unsigned i = 0; i < 4; ++i) {
      if (mask & (1u << i)) ++report.per_heuristic[i];
    }
  }
  report.affected_fraction =
      flags.empty() ? 0.0
                    : static_cast<double>(report.total_affected) /
                          static_cast<double>(flags.size());
  return report;
}

}  // namespace prscrub
