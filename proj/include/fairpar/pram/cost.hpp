// Copyright 2026 The fairpar Authors
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

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <ostream>

namespace fairpar::pram {

// Synchronous-round cost of a computation.
//   depth       number of parallel steps
//   work        total element operations over all steps
//   peak_width  largest number of operations in a single step ("processors")
struct CostMeter {
  std::uint64_t depth = 0;
  std::uint64_t work = 0;
  std::uint64_t peak_width = 0;

  // One synchronous step of `width` independent operations. Empty steps are
  // not counted, so depth <= work always holds.
  void step(std::uint64_t width) {
    if (width == 0) return;
    depth += 1;
    work += width;
    peak_width = std::max(peak_width, width);
  }

  // Sequential composition: `other` runs after this.
  CostMeter& then(const CostMeter& other) {
    depth += other.depth;
    work += other.work;
    peak_width = std::max(peak_width, other.peak_width);
    return *this;
  }

  // Parallel composition: `other` runs in the same rounds as this.
  CostMeter& alongside(const CostMeter& other) {
    depth = std::max(depth, other.depth);
    work += other.work;
    peak_width += other.peak_width;
    return *this;
  }

  friend bool operator==(const CostMeter&, const CostMeter&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const CostMeter& c) {
  return os << "{depth=" << c.depth << ", work=" << c.work << ", peak_width=" << c.peak_width
            << "}";
}

// ceil(log2(k)) for k >= 1; 0 for k <= 1.
constexpr std::uint64_t ceil_log2(std::uint64_t k) {
  std::uint64_t r = 0;
  while ((std::uint64_t{1} << r) < k) ++r;
  return r;
}

// Charge the steps of `lanes` independent tournament trees over `leaves`
// elements each.
inline void charge_tree(CostMeter& meter, std::uint64_t lanes, std::uint64_t leaves) {
  while (leaves > 1) {
    meter.step(lanes * (leaves / 2));
    leaves = (leaves + 1) / 2;
  }
}

}  // namespace fairpar::pram
