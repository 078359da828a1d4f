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

// Square matrices over a semiring, with the two closures the allocation
// algorithms need: min-plus all-pairs shortest paths and boolean transitive
// closure. Both use repeated squaring, ceil(log2 order) rounds.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fairpar/error.hpp"
#include "fairpar/pram/cost.hpp"
#include "fairpar/pram/scheduler.hpp"

namespace fairpar::pram {

// (min, +) over int64 with +inf. +inf absorbs under +, and is the identity
// of min.
struct MinPlus {
  using value_type = std::int64_t;
  static constexpr value_type kInf = std::numeric_limits<value_type>::max();
  static constexpr value_type zero() { return kInf; }
  static constexpr value_type one() { return 0; }
  static value_type plus(value_type a, value_type b) { return a < b ? a : b; }
  static value_type times(value_type a, value_type b) {
    if (a == kInf || b == kInf) return kInf;
    value_type r;
    if (__builtin_add_overflow(a, b, &r) || r == kInf) {
      throw Overflow("min-plus: path weight overflows int64");
    }
    return r;
  }
};

// (or, and) over {0, 1}.
struct BoolOrAnd {
  using value_type = std::uint8_t;
  static constexpr value_type zero() { return 0; }
  static constexpr value_type one() { return 1; }
  static value_type plus(value_type a, value_type b) { return (a | b) ? 1 : 0; }
  static value_type times(value_type a, value_type b) { return (a & b) ? 1 : 0; }
};

template <class Semiring>
class SquareMatrix {
 public:
  using value_type = typename Semiring::value_type;

  explicit SquareMatrix(std::size_t order)
      : order_(order), entries_(order * order, Semiring::zero()) {}

  std::size_t order() const { return order_; }
  value_type& at(std::size_t i, std::size_t j) { return entries_[i * order_ + j]; }
  value_type at(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t order_;
  std::vector<value_type> entries_;
};

using DistanceMatrix = SquareMatrix<MinPlus>;
using BoolMatrix = SquareMatrix<BoolOrAnd>;

enum class CycleMode { kThrow, kReport };

struct ApspResult {
  DistanceMatrix dist;
  CostMeter cost;
  bool negative_cycle = false;
};

// Minimum walk weight between every ordered pair (diagonal starts at 0).
// With kThrow a negative cycle raises NegativeCycle; with kReport it sets
// negative_cycle and the distances are meaningless.
inline ApspResult apsp_minplus(const DistanceMatrix& adj, CycleMode mode = CycleMode::kThrow) {
  const std::size_t n = adj.order();
  DistanceMatrix cur = adj;
  for (std::size_t i = 0; i < n; ++i) cur.at(i, i) = std::min<std::int64_t>(cur.at(i, i), 0);

  CostMeter cost;
  const std::uint64_t rounds = ceil_log2(n);
  DistanceMatrix next(n);
  for (std::uint64_t r = 0; r < rounds; ++r) {
    CrewAudit audit(n * n);
    parallel_for(
        n,
        [&](std::size_t i) {
          for (std::size_t j = 0; j < n; ++j) {
            std::int64_t best = MinPlus::zero();
            for (std::size_t k = 0; k < n; ++k) {
              best = MinPlus::plus(best, MinPlus::times(cur.at(i, k), cur.at(k, j)));
            }
            audit.claim(i * n + j);
            next.at(i, j) = best;
          }
        },
        1);
    cost.step(static_cast<std::uint64_t>(n) * n * n);
    charge_tree(cost, static_cast<std::uint64_t>(n) * n, n);
    std::swap(cur, next);
  }

  bool negative = false;
  for (std::size_t i = 0; i < n; ++i) negative = negative || cur.at(i, i) < 0;
  charge_tree(cost, 1, n);
  if (negative && mode == CycleMode::kThrow) {
    throw NegativeCycle("apsp: negative cycle (some diagonal entry < 0)");
  }
  return {std::move(cur), cost, negative};
}

struct ClosureResult {
  BoolMatrix reach;
  CostMeter cost;
  std::size_t rounds = 0;
};

// reach(u, v) iff a directed path of length >= 1 leads from u to v. Each
// round sets R <- R or R*R over packed bit rows and stops early once R is
// stable; at most ceil(log2 order) rounds.
inline ClosureResult transitive_closure(const BoolMatrix& adj) {
  const std::size_t n = adj.order();
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> cur(n * words, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (adj.at(i, j)) cur[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }

  ClosureResult out{BoolMatrix(n), {}, 0};
  const std::uint64_t max_rounds = ceil_log2(n);
  std::vector<std::uint64_t> next(cur.size());
  std::vector<std::uint8_t> changed(n);
  for (std::uint64_t r = 0; r < max_rounds; ++r) {
    CrewAudit audit(n);
    parallel_for(
        n,
        [&](std::size_t i) {
          audit.claim(i);
          const std::uint64_t* row = &cur[i * words];
          std::uint64_t* dst = &next[i * words];
          std::copy(row, row + words, dst);
          for (std::size_t k = 0; k < n; ++k) {
            if ((row[k / 64] >> (k % 64)) & 1) {
              const std::uint64_t* via = &cur[k * words];
              for (std::size_t w = 0; w < words; ++w) dst[w] |= via[w];
            }
          }
          changed[i] = std::equal(row, row + words, dst) ? 0 : 1;
        },
        1);
    out.cost.step(static_cast<std::uint64_t>(n) * n * n);
    charge_tree(out.cost, static_cast<std::uint64_t>(n) * n, n);
    out.cost.step(static_cast<std::uint64_t>(n) * n);
    ++out.rounds;
    cur.swap(next);
    if (std::none_of(changed.begin(), changed.end(), [](std::uint8_t c) { return c != 0; })) break;
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.reach.at(i, j) = (cur[i * words + j / 64] >> (j % 64)) & 1;
    }
  }
  return out;
}

}  // namespace fairpar::pram
