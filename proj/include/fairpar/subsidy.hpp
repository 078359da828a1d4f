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

// Fair division with subsidies.
//
// envy_eliminating_payments pays each agent the heaviest envy path leaving
// it, via min-plus APSP on the negated envy graph.
//
// constrained_payments works on the payment rejection graph: vertex (i, j)
// stands for "agent i is paid j". Rejecting (i, j) means every feasible
// vector pays i more than j. An edge u -> v says rejecting u forces
// rejecting v; envy supplies edges (k, l) -> (i, j) whenever
//   v_i(X_i) + j < v_i(X_k) + l + 1,
// and each constraint (i, x, j, y) supplies (i, x) -> (j, y). Rejections
// start from the levels envy forces outright and spread along edges; the
// smallest surviving level of each row is the payment.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairpar/model.hpp"
#include "fairpar/payments.hpp"
#include "fairpar/pram/cost.hpp"
#include "fairpar/pram/matrix.hpp"
#include "fairpar/pram/reduce.hpp"
#include "fairpar/pram/scheduler.hpp"
#include "fairpar/verify.hpp"

namespace fairpar {

namespace detail {

// -w(i, j) off the diagonal, 0 on it.
inline pram::DistanceMatrix negated_envy(const EnvyGraph& g) {
  pram::DistanceMatrix adj(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = 0; j < g.n; ++j) adj.at(i, j) = i == j ? 0 : -g.weight(i, j);
  }
  return adj;
}

}  // namespace detail

// True iff some payment vector makes X envy-free, i.e. the envy graph has
// no positive-weight cycle.
inline bool is_envy_freeable(const Instance& inst, const Allocation& x) {
  require_complete(inst, x, "is_envy_freeable");
  const auto g = envy_graph(inst, x);
  return !pram::apsp_minplus(detail::negated_envy(g), pram::CycleMode::kReport).negative_cycle;
}

// q_i = heaviest envy path starting at i (the empty path counts, so q_i >= 0).
// This is the componentwise-smallest envy-eliminating vector.
inline PaymentVector envy_eliminating_payments(const Instance& inst, const Allocation& x,
                                               pram::CostMeter* cost = nullptr) {
  require_complete(inst, x, "envy_eliminating_payments");
  const auto g = envy_graph(inst, x);
  const std::size_t n = g.n;
  auto apsp = pram::apsp_minplus(detail::negated_envy(g), pram::CycleMode::kReport);
  if (apsp.negative_cycle) {
    throw NotEnvyFreeable("allocation is not envy-freeable: the envy graph has a positive cycle");
  }
  PaymentVector q(n);
  std::vector<pram::CostMeter> costs(n);
  pram::parallel_for(n, [&](std::size_t i) {
    std::vector<std::int64_t> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = apsp.dist.at(i, j);
    auto r = pram::par_reduce(std::span<const std::int64_t>(row), pram::ReduceOp::kMin);
    q[i] = -r.value;
    costs[i] = r.cost;
  });
  if (cost) {
    *cost = g.cost;
    cost->then(apsp.cost);
    pram::CostMeter rows;
    for (const auto& c : costs) rows.alongside(c);
    cost->then(rows);
  }
  return q;
}

struct SubsidyOptions {
  // Above this many grid vertices reachability runs as a worklist instead
  // of a materialized transitive closure. Both give the same rejections.
  std::size_t closure_vertex_cap = 4096;
  // Hard limit on n * (m * Delta + 1).
  std::size_t grid_vertex_cap = std::size_t{1} << 26;
};

class RejectionGraph {
 public:
  static RejectionGraph build(const Instance& inst, const Allocation& x,
                              std::span<const PaymentConstraint> constraints,
                              const SubsidyOptions& options = {}) {
    require_complete(inst, x, "constrained_payments");
    check_constraints(inst, constraints);
    RejectionGraph g;
    g.n_ = inst.agents();
    const Value cap = payment_cap(inst);
    const auto levels = static_cast<std::uint64_t>(cap) + 1;
    if (levels > options.grid_vertex_cap / g.n_) {
      throw CapExceeded("payment grid has " + std::to_string(g.n_) + " x " +
                        std::to_string(levels) + " vertices, above the cap of " +
                        std::to_string(options.grid_vertex_cap) +
                        "; rescale the valuations to a smaller range");
    }
    g.levels_ = static_cast<std::size_t>(levels);
    g.values_ = fairpar::bundle_values(inst, x);
    g.constraints_.assign(constraints.begin(), constraints.end());
    return g;
  }

  std::size_t agents() const { return n_; }
  std::size_t levels() const { return levels_; }
  std::size_t vertices() const { return n_ * levels_; }
  std::size_t vertex(std::size_t agent, std::size_t level) const { return agent * levels_ + level; }
  std::size_t agent_of(std::size_t v) const { return v / levels_; }
  std::size_t level_of(std::size_t v) const { return v % levels_; }
  const std::vector<PaymentConstraint>& constraints() const { return constraints_; }
  const BundleValueMatrix& bundle_values() const { return values_; }

  // (k, l) -> (i, j) iff v_i(X_i) + j < v_i(X_k) + l + 1.
  bool envy_edge(std::size_t from, std::size_t to) const {
    const std::size_t k = agent_of(from), i = agent_of(to);
    const auto l = static_cast<Value>(level_of(from));
    const auto j = static_cast<Value>(level_of(to));
    return values_(i, i) + j < values_(i, k) + l + 1;
  }

  bool constraint_edge(std::size_t from, std::size_t to) const {
    return std::any_of(constraints_.begin(), constraints_.end(), [&](const PaymentConstraint& c) {
      return vertex(c.i, static_cast<std::size_t>(c.x)) == from &&
             vertex(c.j, static_cast<std::size_t>(c.y)) == to;
    });
  }

  bool has_edge(std::size_t from, std::size_t to) const {
    return envy_edge(from, to) || constraint_edge(from, to);
  }

  // Envy alone forces agent i above every level j with
  // v_i(X_i) + j < v_i(X_k) for some k; these levels seed the rejections.
  // The count is capped at levels().
  std::size_t forced_levels(std::size_t i) const {
    Value need = 0;
    for (std::size_t k = 0; k < n_; ++k) need = std::max(need, values_(i, k) - values_(i, i));
    return static_cast<std::size_t>(std::min<Value>(need, static_cast<Value>(levels_)));
  }

  // Initially rejected vertices, row by row.
  std::vector<std::size_t> initial() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < forced_levels(i); ++j) out.push_back(vertex(i, j));
    }
    return out;
  }

  pram::BoolMatrix adjacency(pram::CostMeter* cost = nullptr) const {
    const std::size_t size = vertices();
    pram::BoolMatrix adj(size);
    pram::parallel_for(
        size,
        [&](std::size_t u) {
          for (std::size_t v = 0; v < size; ++v) adj.at(u, v) = envy_edge(u, v) ? 1 : 0;
        },
        8);
    for (const auto& c : constraints_) {
      adj.at(vertex(c.i, static_cast<std::size_t>(c.x)), vertex(c.j, static_cast<std::size_t>(c.y))) = 1;
    }
    if (cost) cost->step(static_cast<std::uint64_t>(size) * size);
    return adj;
  }

 private:
  RejectionGraph() = default;

  std::size_t n_ = 0;
  std::size_t levels_ = 0;
  BundleValueMatrix values_;
  std::vector<PaymentConstraint> constraints_;
};

struct PaymentOutcome {
  // nullopt: no payment vector in [0, m * Delta]^n satisfies everything.
  std::optional<PaymentVector> payments;
  // One flag per grid vertex.
  std::vector<std::uint8_t> rejected;
  bool used_closure = false;
  pram::CostMeter cost;
};

namespace detail {

inline std::vector<std::uint8_t> reject_by_closure(const RejectionGraph& g, pram::CostMeter& cost) {
  const std::size_t size = g.vertices();
  const auto adj = g.adjacency(&cost);
  const auto closure = pram::transitive_closure(adj);
  cost.then(closure.cost);

  const auto seeds = g.initial();
  std::vector<std::uint8_t> rejected(size, 0);
  pram::parallel_for(
      size,
      [&](std::size_t v) {
        for (std::size_t f : seeds) {
          if (f == v || closure.reach.at(f, v)) {
            rejected[v] = 1;
            break;
          }
        }
      },
      64);
  cost.step(static_cast<std::uint64_t>(size) * seeds.size());
  pram::charge_tree(cost, size, seeds.size());
  return rejected;
}

// Same rejections without the closure matrix. Rejections within a row are
// downward closed (the envy rule gives (i, l) -> (i, j) for all j <= l), so
// each row is tracked by its count of rejected levels.
inline std::vector<std::uint8_t> reject_by_worklist(const RejectionGraph& g) {
  const std::size_t n = g.agents();
  const auto levels = static_cast<Value>(g.levels());
  const auto& v = g.bundle_values();
  std::vector<Value> count(n, 0);
  std::deque<std::size_t> work;
  auto raise = [&](std::size_t agent, Value c) {
    c = std::min(c, levels);
    if (c > count[agent]) {
      count[agent] = c;
      work.push_back(agent);
    }
  };
  for (std::size_t i = 0; i < n; ++i) raise(i, static_cast<Value>(g.forced_levels(i)));
  while (!work.empty()) {
    const std::size_t k = work.front();
    work.pop_front();
    const Value top = count[k] - 1;  // highest rejected level of row k
    for (std::size_t i = 0; i < n; ++i) {
      // (k, top) -> (i, j) for every j < v_i(X_k) + top + 1 - v_i(X_i)
      raise(i, v(i, k) + top + 1 - v(i, i));
    }
    for (const auto& c : g.constraints()) {
      if (c.i == k && c.x <= top) raise(c.j, c.y + 1);
    }
  }
  std::vector<std::uint8_t> rejected(g.vertices(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (Value j = 0; j < count[i]; ++j) rejected[g.vertex(i, static_cast<std::size_t>(j))] = 1;
  }
  return rejected;
}

}  // namespace detail

inline PaymentOutcome constrained_payments_detail(const Instance& inst, const Allocation& x,
                                                  std::span<const PaymentConstraint> constraints,
                                                  const SubsidyOptions& options = {}) {
  const auto graph = RejectionGraph::build(inst, x, constraints, options);
  PaymentOutcome out;
  out.cost = graph.bundle_values().cost;
  out.used_closure = graph.vertices() <= options.closure_vertex_cap;
  out.rejected = out.used_closure ? detail::reject_by_closure(graph, out.cost)
                                  : detail::reject_by_worklist(graph);

  // Smallest unrejected level per row: a min-reduction over the row.
  const std::size_t n = graph.agents(), levels = graph.levels();
  PaymentVector q(n, 0);
  bool feasible = true;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::int64_t> row(levels);
    for (std::size_t j = 0; j < levels; ++j) {
      row[j] = out.rejected[graph.vertex(i, j)] ? pram::identity_of(pram::ReduceOp::kMin)
                                                : static_cast<std::int64_t>(j);
    }
    const auto r = pram::par_reduce(std::span<const std::int64_t>(row), pram::ReduceOp::kMin);
    if (r.value == pram::identity_of(pram::ReduceOp::kMin)) feasible = false;
    q[i] = r.value;
  }
  pram::charge_tree(out.cost, n, levels);
  if (feasible) out.payments = std::move(q);
  return out;
}

// Componentwise-smallest envy-eliminating vector in [0, m * Delta]^n that
// satisfies every constraint, or nullopt ("no satisfying vector").
inline std::optional<PaymentVector> constrained_payments(
    const Instance& inst, const Allocation& x, std::span<const PaymentConstraint> constraints,
    const SubsidyOptions& options = {}) {
  return constrained_payments_detail(inst, x, constraints, options).payments;
}

}  // namespace fairpar
