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

// Envy graphs and EF / EF1 / EFX checks.
//
// Every check has the same shape: one parallel step of comparison bits,
// tournament reductions per agent pair, and a final AND over pairs. The
// failure witness is the lexicographically smallest violating pair, found
// by a min-reduction over pair indices that runs alongside the AND.

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "fairpar/model.hpp"
#include "fairpar/pram/cost.hpp"
#include "fairpar/pram/reduce.hpp"
#include "fairpar/pram/scheduler.hpp"

namespace fairpar {

// cross(i, k) = v_i(X_k), each cell a tournament sum over X_k.
struct BundleValueMatrix {
  std::size_t n = 0;
  std::vector<Value> cells;
  pram::CostMeter cost;

  Value operator()(std::size_t i, std::size_t k) const { return cells[i * n + k]; }
};

inline BundleValueMatrix bundle_values(const Instance& inst, const Allocation& x) {
  check_compatible(inst, x);
  const std::size_t n = inst.agents();
  BundleValueMatrix out{n, std::vector<Value>(n * n, 0), {}};
  std::vector<pram::CostMeter> costs(n * n);
  pram::parallel_for(
      n * n,
      [&](std::size_t cell) {
        const std::size_t i = cell / n;
        const auto& bundle = x.bundle(cell % n);
        std::vector<std::int64_t> leaves(bundle.size());
        for (std::size_t k = 0; k < bundle.size(); ++k) leaves[k] = inst.value(i, bundle[k]);
        auto r = pram::par_reduce(std::span<const std::int64_t>(leaves), pram::ReduceOp::kSum);
        out.cells[cell] = r.value;
        costs[cell] = r.cost;
      },
      16);
  for (const auto& c : costs) out.cost.alongside(c);
  return out;
}

// Complete digraph on agents; weight(i, j) = v_i(X_j) - v_i(X_i).
struct EnvyGraph {
  std::size_t n = 0;
  std::vector<Value> weights;
  pram::CostMeter cost;

  Value weight(std::size_t i, std::size_t j) const { return weights[i * n + j]; }
};

inline EnvyGraph envy_graph(const BundleValueMatrix& v) {
  const std::size_t n = v.n;
  EnvyGraph g{n, std::vector<Value>(n * n, 0), v.cost};
  pram::parallel_for(n * n, [&](std::size_t cell) {
    const std::size_t i = cell / n;
    g.weights[cell] = v(i, cell % n) - v(i, i);
  });
  g.cost.step(static_cast<std::uint64_t>(n) * n);
  return g;
}

inline EnvyGraph envy_graph(const Instance& inst, const Allocation& x) {
  return envy_graph(bundle_values(inst, x));
}

enum class Property { kEF, kEF1, kEFX };

inline std::string_view to_string(Property p) {
  switch (p) {
    case Property::kEF: return "EF";
    case Property::kEF1: return "EF1";
    case Property::kEFX: return "EFX";
  }
  return "EF";
}

struct Witness {
  std::size_t envier = 0;
  std::size_t envied = 0;
  // EF1: the whole envied bundle (no single removal helps).
  // EFX: the one item whose removal leaves envy.
  std::vector<std::size_t> items;
};

struct FairnessReport {
  Property property = Property::kEF;
  bool holds = true;
  std::optional<Witness> witness;
  pram::CostMeter cost;
};

namespace detail {

inline constexpr std::int64_t kNoPair = std::numeric_limits<std::int64_t>::max();

// pair_ok has one entry per ordered pair (i, j), row-major. Reduces it to
// the verdict and the smallest failing pair.
inline FairnessReport finish_report(Property property, std::size_t n,
                                    const std::vector<std::int64_t>& pair_ok,
                                    pram::CostMeter cost) {
  std::vector<std::int64_t> failing(pair_ok.size());
  pram::parallel_for(pair_ok.size(), [&](std::size_t p) {
    failing[p] = pair_ok[p] ? kNoPair : static_cast<std::int64_t>(p);
  });
  cost.step(pair_ok.size());
  auto all = pram::par_reduce(std::span<const std::int64_t>(pair_ok), pram::ReduceOp::kAnd);
  auto first = pram::par_reduce(std::span<const std::int64_t>(failing), pram::ReduceOp::kMin);
  cost.then(all.cost.alongside(first.cost));

  FairnessReport report{property, all.value != 0, std::nullopt, cost};
  if (!report.holds) {
    const auto p = static_cast<std::size_t>(first.value);
    report.witness = Witness{p / n, p % n, {}};
  }
  return report;
}

// EF1 (any_item = true) or EFX (any_item = false). Per-item bit:
// v_i(X_i) >= v_i(X_j) - v_i(g). EF1 ORs the bits of a pair, EFX ANDs them.
inline FairnessReport check_up_to_one(const Instance& inst, const Allocation& x, bool any_item) {
  const Property property = any_item ? Property::kEF1 : Property::kEFX;
  require_complete(inst, x, any_item ? "check_ef1" : "check_efx");
  const std::size_t n = inst.agents();
  const auto v = bundle_values(inst, x);
  pram::CostMeter cost = v.cost;

  std::vector<std::int64_t> pair_ok(n * n, 1);
  std::vector<pram::CostMeter> pair_cost(n * n);
  std::uint64_t bit_width = 0;
  for (std::size_t p = 0; p < n * n; ++p) {
    if (p / n != p % n) bit_width += x.bundle(p % n).size();
  }
  pram::parallel_for(
      n * n,
      [&](std::size_t p) {
        const std::size_t i = p / n;
        const std::size_t j = p % n;
        const auto& bundle = x.bundle(j);
        if (i == j || bundle.empty()) return;  // empty X_j: v_i(X_i) >= 0 always
        std::vector<std::int64_t> bits(bundle.size());
        for (std::size_t k = 0; k < bundle.size(); ++k) {
          bits[k] = v(i, i) >= v(i, j) - inst.value(i, bundle[k]) ? 1 : 0;
        }
        auto r = pram::par_reduce(std::span<const std::int64_t>(bits),
                                  any_item ? pram::ReduceOp::kOr : pram::ReduceOp::kAnd);
        pair_ok[p] = r.value;
        pair_cost[p] = r.cost;
      },
      16);
  cost.step(bit_width);
  pram::CostMeter trees;
  for (const auto& c : pair_cost) trees.alongside(c);
  cost.then(trees);

  auto report = finish_report(property, n, pair_ok, cost);
  if (report.witness) {
    auto& w = *report.witness;
    const auto& bundle = x.bundle(w.envied);
    if (any_item) {
      w.items = bundle;
    } else {
      for (std::size_t g : bundle) {
        if (v(w.envier, w.envier) < v(w.envier, w.envied) - inst.value(w.envier, g)) {
          w.items = {g};
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace detail

inline FairnessReport check_ef(const Instance& inst, const Allocation& x) {
  require_complete(inst, x, "check_ef");
  const std::size_t n = inst.agents();
  const auto v = bundle_values(inst, x);
  std::vector<std::int64_t> pair_ok(n * n);
  pram::parallel_for(n * n, [&](std::size_t p) {
    const std::size_t i = p / n;
    pair_ok[p] = v(i, i) >= v(i, p % n) ? 1 : 0;
  });
  pram::CostMeter cost = v.cost;
  cost.step(static_cast<std::uint64_t>(n) * n);
  return detail::finish_report(Property::kEF, n, pair_ok, cost);
}

inline FairnessReport check_ef1(const Instance& inst, const Allocation& x) {
  return detail::check_up_to_one(inst, x, true);
}

inline FairnessReport check_efx(const Instance& inst, const Allocation& x) {
  return detail::check_up_to_one(inst, x, false);
}

inline FairnessReport check(Property p, const Instance& inst, const Allocation& x) {
  switch (p) {
    case Property::kEF: return check_ef(inst, x);
    case Property::kEF1: return check_ef1(inst, x);
    case Property::kEFX: return check_efx(inst, x);
  }
  return check_ef(inst, x);
}

}  // namespace fairpar
