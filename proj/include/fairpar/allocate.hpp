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
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairpar/model.hpp"
#include "fairpar/pram/cost.hpp"
#include "fairpar/pram/reduce.hpp"
#include "fairpar/pram/scheduler.hpp"
#include "fairpar/pram/sort.hpp"

namespace fairpar {

// Picking order over agents: sigma[0] picks first.
class AgentOrder {
 public:
  static AgentOrder identity(std::size_t n) {
    AgentOrder o;
    o.sigma_.resize(n);
    std::iota(o.sigma_.begin(), o.sigma_.end(), std::size_t{0});
    return o;
  }

  static AgentOrder create(std::vector<std::size_t> sigma) {
    std::vector<bool> seen(sigma.size(), false);
    for (std::size_t a : sigma) {
      if (a >= sigma.size() || seen[a]) {
        throw InvalidInput("order: not a permutation of agents 1.." + std::to_string(sigma.size()));
      }
      seen[a] = true;
    }
    AgentOrder o;
    o.sigma_ = std::move(sigma);
    return o;
  }

  std::size_t size() const { return sigma_.size(); }
  std::size_t operator[](std::size_t pos) const { return sigma_[pos]; }
  const std::vector<std::size_t>& sigma() const { return sigma_; }

 private:
  std::vector<std::size_t> sigma_;
};

struct Pick {
  std::size_t round = 0;  // 0-based
  std::size_t agent = 0;
  std::optional<std::size_t> item;
};

struct RoundRobinResult {
  Allocation allocation;
  std::vector<Pick> picks;
};

// Round-Robin in sigma order. Each agent takes its most valued remaining
// item (ties to the smallest index) and passes when nothing left is worth
// anything to it. Stops after a round in which nobody picks; items nobody
// values stay unallocated.
inline RoundRobinResult round_robin_trace(const Instance& inst, const AgentOrder& order) {
  const std::size_t n = inst.agents();
  const std::size_t m = inst.items();
  if (order.size() != n) {
    throw InvalidInput("round_robin: order has " + std::to_string(order.size()) +
                       " agents, instance has " + std::to_string(n));
  }
  // Per-agent preference lists over positively valued items.
  std::vector<std::vector<std::size_t>> prefs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t g = 0; g < m; ++g) {
      if (inst.value(i, g) > 0) prefs[i].push_back(g);
    }
    std::stable_sort(prefs[i].begin(), prefs[i].end(), [&](std::size_t a, std::size_t b) {
      return inst.value(i, a) > inst.value(i, b);
    });
  }
  std::vector<std::size_t> cursor(n, 0);
  std::vector<std::size_t> owner(m, kUnassigned);
  std::vector<Pick> picks;
  for (std::size_t round = 0;; ++round) {
    bool any = false;
    for (std::size_t pos = 0; pos < n; ++pos) {
      const std::size_t agent = order[pos];
      auto& c = cursor[agent];
      while (c < prefs[agent].size() && owner[prefs[agent][c]] != kUnassigned) ++c;
      Pick pick{round, agent, std::nullopt};
      if (c < prefs[agent].size()) {
        pick.item = prefs[agent][c];
        owner[*pick.item] = agent;
        any = true;
      }
      picks.push_back(pick);
    }
    if (!any) break;
  }
  return {Allocation::from_owners(n, owner), std::move(picks)};
}

inline Allocation round_robin(const Instance& inst, const AgentOrder& order) {
  return round_robin_trace(inst, order).allocation;
}

namespace detail {

// Agent 1's preference ratio v1/v2 in decreasing order, by exact
// cross-multiplication. v2 = 0 < v1 counts as infinite; items nobody
// values go last. Ties by index (handled by the stable sort).
struct RatioLess {
  const Instance* inst;
  bool operator()(std::size_t a, std::size_t b) const {
    const Value a1 = inst->value(0, a), a2 = inst->value(1, a);
    const Value b1 = inst->value(0, b), b2 = inst->value(1, b);
    const bool a_null = a1 == 0 && a2 == 0;
    const bool b_null = b1 == 0 && b2 == 0;
    if (a_null || b_null) return !a_null && b_null;
    return static_cast<__int128>(a1) * b2 > static_cast<__int128>(b1) * a2;
  }
};

}  // namespace detail

struct TwoAgentSplit {
  Allocation allocation;
  // Items by decreasing v1/v2.
  std::vector<std::size_t> ratio_order;
  // Agent 1 receives ratio_order[0, cut); agent 2 the rest.
  std::size_t cut = 0;
  // True when binary search failed and the linear scan picked the cut.
  bool used_fallback = false;
  pram::CostMeter cost;
};

// EF1 split along the ratio order for two agents. The agent-1 EF1 condition
// is monotone in the cut, so binary search finds the smallest cut where it
// holds; agent 2 is then checked, with a full scan as a fallback.
inline TwoAgentSplit ef1_fpo_two_agents_split(const Instance& inst) {
  if (inst.agents() != 2) {
    throw InvalidInput("ef1_fpo_two_agents: needs exactly 2 agents, got " +
                       std::to_string(inst.agents()));
  }
  const std::size_t m = inst.items();
  auto sorted = pram::bitonic_sort_indices(m, detail::RatioLess{&inst});
  TwoAgentSplit out{Allocation::from_bundles(m, {{}, {}}), std::move(sorted.keys), 0, false,
                    sorted.cost};

  // Items nobody values sit at the end and always go to agent 2.
  std::size_t splittable = m;
  while (splittable > 0 && !inst.valued_by_someone(out.ratio_order[splittable - 1])) --splittable;

  auto split_at = [&](std::size_t cut) {
    std::vector<std::vector<std::size_t>> b(2);
    b[0].assign(out.ratio_order.begin(), out.ratio_order.begin() + cut);
    b[1].assign(out.ratio_order.begin() + cut, out.ratio_order.end());
    return Allocation::from_bundles(m, std::move(b));
  };
  auto agent_ok = [&](const Allocation& x, std::size_t i) {
    const std::size_t j = 1 - i;
    const auto& other = x.bundle(j);
    if (other.empty()) return true;
    const Value own = bundle_value(inst, i, x.bundle(i));
    const Value theirs = bundle_value(inst, i, other);
    Value best = 0;
    for (std::size_t g : other) best = std::max(best, inst.value(i, g));
    return own >= theirs - best;
  };

  std::size_t lo = 0, hi = splittable;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (agent_ok(split_at(mid), 0)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
    out.cost.step(2 * m);
  }
  auto candidate = split_at(lo);
  if (agent_ok(candidate, 1)) {
    out.cut = lo;
    out.allocation = std::move(candidate);
    return out;
  }
  out.used_fallback = true;
  for (std::size_t cut = 0; cut <= splittable; ++cut) {
    auto x = split_at(cut);
    out.cost.step(2 * m);
    if (agent_ok(x, 0) && agent_ok(x, 1)) {
      out.cut = cut;
      out.allocation = std::move(x);
      return out;
    }
  }
  throw std::logic_error("ef1_fpo_two_agents: no EF1 split along the ratio order");
}

inline Allocation ef1_fpo_two_agents(const Instance& inst) {
  return ef1_fpo_two_agents_split(inst).allocation;
}

// Identical agents: rank items by value (ties by index) and deal them out in
// sigma order, the k-th ranked item to sigma[k mod n]. Zero-valued items
// are left unallocated, as Round-Robin would.
inline Allocation ef1_identical(const Instance& inst, const AgentOrder& order,
                                pram::CostMeter* cost = nullptr) {
  if (inst.valuation_class() != ValuationClass::kIdentical) {
    throw InvalidInput("ef1_identical: instance class is " +
                       std::string(to_string(inst.valuation_class())) + ", expected identical");
  }
  const std::size_t n = inst.agents();
  if (order.size() != n) throw InvalidInput("ef1_identical: order size does not match n");
  const std::size_t m = inst.items();
  auto ranked = pram::bitonic_sort_indices(
      m, [&](std::size_t a, std::size_t b) { return inst.value(0, a) > inst.value(0, b); });
  std::vector<std::size_t> owner(m, kUnassigned);
  pram::parallel_for(m, [&](std::size_t k) {
    const std::size_t g = ranked.keys[k];
    if (inst.value(0, g) > 0) owner[g] = order[k % n];
  });
  if (cost) {
    *cost = ranked.cost;
    cost->step(m);
  }
  return Allocation::from_owners(n, owner);
}

// Each item to an agent valuing it most (ties to the smallest agent index).
inline Allocation welfare_max_allocation(const Instance& inst, pram::CostMeter* cost = nullptr) {
  const std::size_t n = inst.agents();
  const std::size_t m = inst.items();
  std::vector<std::size_t> owner(m);
  std::vector<pram::CostMeter> costs(m);
  pram::parallel_for(
      m,
      [&](std::size_t g) {
        std::vector<std::int64_t> column(n);
        for (std::size_t i = 0; i < n; ++i) column[i] = inst.value(i, g);
        auto r = pram::par_argmax(column);
        owner[g] = r.value.index;
        costs[g] = r.cost;
      },
      64);
  if (cost) {
    *cost = {};
    for (const auto& c : costs) cost->alongside(c);
  }
  return Allocation::from_owners(n, owner);
}

}  // namespace fairpar
