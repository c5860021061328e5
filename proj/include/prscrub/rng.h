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

#ifndef PRSCRUB_RNG_H_
#define PRSCRUB_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace prscrub {

// Name recorded in manifests and split metadata. Bump the suffix whenever the
// draw sequence for a given seed changes.
inline constexpr std::string_view kPrngName = "mt19937_64/lemire-bounded/v1";

// Portable seeded generator. std::mt19937_64 is bit-specified by the
// standard; the distribution helpers below are written out by hand because
// std::uniform_int_distribution and std::shuffle are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Unbiased integer in [0, bound). bound must be > 0.
  std::uint64_t Below(std::uint64_t bound);

  bool CoinFlip() { return (NextU64() >> 63) != 0; }

  // Fisher-Yates, back to front.
  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(Below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace prscrub

#endif  // PRSCRUB_RNG_H_
