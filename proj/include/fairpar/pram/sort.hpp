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

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fairpar/pram/cost.hpp"
#include "fairpar/pram/scheduler.hpp"

namespace fairpar::pram {

template <class T>
struct Sorted {
  std::vector<T> keys;
  // permutation[input position] = output position
  std::vector<std::size_t> permutation;
  CostMeter cost;
};

namespace detail {

// Slot in the padded network. Pad slots compare greater than every real
// key and never leave this header.
struct SortSlot {
  std::size_t index = 0;
  bool pad = true;
};

}  // namespace detail

// Bitonic sorting network over (key, original index) pairs, so equal keys
// keep input order. Input is padded to the next power of two K; the network
// has log2(K) * (log2(K) + 1) / 2 comparator stages of K/2 comparators.
template <class T, class Less = std::less<T>>
Sorted<T> bitonic_sort(std::span<const T> keys, Less less = {}) {
  Sorted<T> out;
  const std::size_t k = keys.size();
  std::size_t padded = 1;
  while (padded < k) padded <<= 1;

  std::vector<detail::SortSlot> slots(padded);
  for (std::size_t i = 0; i < k; ++i) slots[i] = {i, false};

  auto slot_less = [&](const detail::SortSlot& a, const detail::SortSlot& b) {
    if (a.pad || b.pad) return !a.pad && b.pad;
    if (less(keys[a.index], keys[b.index])) return true;
    if (less(keys[b.index], keys[a.index])) return false;
    return a.index < b.index;
  };

  if (k > 1) {
    CrewAudit audit(padded);
    for (std::size_t block = 2; block <= padded; block <<= 1) {
      for (std::size_t stride = block >> 1; stride > 0; stride >>= 1) {
        audit.next_step();
        parallel_for(padded, [&](std::size_t i) {
          const std::size_t partner = i ^ stride;
          if (partner <= i) return;
          audit.claim(i);
          audit.claim(partner);
          const bool ascending = (i & block) == 0;
          const bool out_of_order = ascending ? slot_less(slots[partner], slots[i])
                                              : slot_less(slots[i], slots[partner]);
          if (out_of_order) std::swap(slots[i], slots[partner]);
        });
        out.cost.step(padded / 2);
      }
    }
  }

  out.keys.reserve(k);
  out.permutation.assign(k, 0);
  for (std::size_t pos = 0; pos < k; ++pos) {
    out.keys.push_back(keys[slots[pos].index]);
    out.permutation[slots[pos].index] = pos;
  }
  return out;
}

// Sorts item indices 0..count-1 by `less` on the indices themselves.
template <class Less>
Sorted<std::size_t> bitonic_sort_indices(std::size_t count, Less less) {
  std::vector<std::size_t> ids(count);
  for (std::size_t i = 0; i < count; ++i) ids[i] = i;
  return bitonic_sort<std::size_t>(std::span<const std::size_t>(ids), less);
}

}  // namespace fairpar::pram
