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
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "fairpar/pram/cost.hpp"
#include "fairpar/pram/scheduler.hpp"

namespace fairpar::pram {

template <class T>
struct Reduced {
  T value;
  CostMeter cost;
};

// Tournament-tree reduction. Level l combines adjacent pairs of level l-1,
// keeping left-to-right order, so any associative `op` gives the same value
// as a left fold. Depth is ceil(log2 k); work is k - 1.
template <class T, class Op>
Reduced<T> par_reduce(std::span<const T> values, T identity, Op op) {
  Reduced<T> out{identity, {}};
  if (values.empty()) return out;
  std::vector<T> cur(values.begin(), values.end());
  std::vector<T> next;
  while (cur.size() > 1) {
    const std::size_t pairs = cur.size() / 2;
    next.resize((cur.size() + 1) / 2);
    CrewAudit audit(next.size());
    parallel_for(pairs, [&](std::size_t p) {
      audit.claim(p);
      next[p] = op(cur[2 * p], cur[2 * p + 1]);
    });
    if (cur.size() % 2 == 1) next.back() = cur.back();
    out.cost.step(pairs);
    cur.swap(next);
  }
  out.value = cur.front();
  return out;
}

enum class ReduceOp { kSum, kMin, kMax, kAnd, kOr };

// Identity of each op: 0, +inf, -inf, true, false. Infinities are the
// int64 extremes; kAnd/kOr treat nonzero as true and yield 0 or 1.
inline std::int64_t identity_of(ReduceOp op) {
  switch (op) {
    case ReduceOp::kSum: return 0;
    case ReduceOp::kMin: return std::numeric_limits<std::int64_t>::max();
    case ReduceOp::kMax: return std::numeric_limits<std::int64_t>::min();
    case ReduceOp::kAnd: return 1;
    case ReduceOp::kOr: return 0;
  }
  return 0;
}

inline std::int64_t apply(ReduceOp op, std::int64_t a, std::int64_t b) {
  switch (op) {
    case ReduceOp::kSum: return a + b;
    case ReduceOp::kMin: return a < b ? a : b;
    case ReduceOp::kMax: return a < b ? b : a;
    case ReduceOp::kAnd: return (a != 0 && b != 0) ? 1 : 0;
    case ReduceOp::kOr: return (a != 0 || b != 0) ? 1 : 0;
  }
  return 0;
}

inline Reduced<std::int64_t> par_reduce(std::span<const std::int64_t> values, ReduceOp op) {
  if (values.size() == 1 && (op == ReduceOp::kAnd || op == ReduceOp::kOr)) {
    return {values[0] != 0 ? 1 : 0, {}};
  }
  return par_reduce<std::int64_t>(values, identity_of(op),
                                  [op](std::int64_t a, std::int64_t b) { return apply(op, a, b); });
}

// Index of a maximum element, ties to the smallest index. Empty input gives
// kNone.
struct ArgMax {
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::int64_t value = std::numeric_limits<std::int64_t>::min();
  std::size_t index = kNone;
};

inline Reduced<ArgMax> par_argmax(std::span<const std::int64_t> values) {
  std::vector<ArgMax> leaves(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) leaves[k] = {values[k], k};
  return par_reduce<ArgMax>(std::span<const ArgMax>(leaves), ArgMax{},
                            [](const ArgMax& a, const ArgMax& b) {
                              if (a.index == ArgMax::kNone) return b;
                              if (b.index == ArgMax::kNone) return a;
                              if (b.value > a.value) return b;
                              if (a.value > b.value) return a;
                              return a.index < b.index ? a : b;
                            });
}

}  // namespace fairpar::pram
