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

// Reduction from lexicographically-first maximal matching (LFMM) to
// fixed-order Round-Robin. Left vertex x_i becomes agent i, right vertex
// y_j becomes item j, and an edge (x_i, y_j) becomes the value m - j + 1,
// so lower-indexed neighbours are strictly preferred. Agent i's first-round
// pick then coincides with x_i's partner in the greedy matching.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairpar/allocate.hpp"
#include "fairpar/model.hpp"
#include "fairpar/random.hpp"

namespace fairpar {

class BipartiteGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;  // (left, right), 0-based

  static BipartiteGraph create(std::size_t left, std::size_t right, std::vector<Edge> edges,
                               std::optional<std::size_t> degree_bound = std::nullopt) {
    if (left == 0) throw InvalidInput("graph: need at least one left vertex");
    if (left < right) {
      throw InvalidInput("graph: |left| = " + std::to_string(left) + " < |right| = " +
                         std::to_string(right) + "; the reduction assumes |left| >= |right|");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (const auto& [x, y] : edges) {
      if (x >= left || y >= right) {
        throw InvalidInput("graph: edge (" + std::to_string(x + 1) + "," + std::to_string(y + 1) +
                           ") out of range");
      }
    }
    BipartiteGraph g;
    g.left_ = left;
    g.right_ = right;
    g.edges_ = std::move(edges);
    g.bound_ = degree_bound;
    if (degree_bound && g.max_degree() > *degree_bound) {
      throw InvalidInput("graph: a vertex has degree " + std::to_string(g.max_degree()) +
                         " above the declared bound " + std::to_string(*degree_bound));
    }
    return g;
  }

  std::size_t left() const { return left_; }
  std::size_t right() const { return right_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::optional<std::size_t>& degree_bound() const { return bound_; }

  std::vector<std::size_t> neighbours(std::size_t x) const {
    std::vector<std::size_t> out;
    for (const auto& [a, b] : edges_) {
      if (a == x) out.push_back(b);
    }
    return out;
  }

  std::size_t max_degree() const {
    std::vector<std::size_t> dl(left_, 0), dr(right_, 0);
    for (const auto& [a, b] : edges_) {
      ++dl[a];
      ++dr[b];
    }
    std::size_t d = 0;
    for (auto v : dl) d = std::max(d, v);
    for (auto v : dr) d = std::max(d, v);
    return d;
  }

 private:
  std::size_t left_ = 0;
  std::size_t right_ = 0;
  std::vector<Edge> edges_;  // sorted, unique
  std::optional<std::size_t> bound_;
};

// match[x] = partner of left vertex x, or nullopt.
using LeftMatching = std::vector<std::optional<std::size_t>>;

// Scan x_1..x_n; each takes its smallest-index free neighbour.
inline LeftMatching lfmm(const BipartiteGraph& g) {
  LeftMatching match(g.left());
  std::vector<bool> taken(g.right(), false);
  for (std::size_t x = 0; x < g.left(); ++x) {
    for (std::size_t y : g.neighbours(x)) {  // ascending
      if (!taken[y]) {
        taken[y] = true;
        match[x] = y;
        break;
      }
    }
  }
  return match;
}

struct Reduction {
  Instance instance;
  AgentOrder order;
  // Degree-bound violations found in the input; the reduction is still
  // well defined.
  std::vector<std::string> warnings;
};

inline Reduction reduce_lfmm_to_rr(const BipartiteGraph& g) {
  const std::size_t n = g.left(), m = g.right();
  std::vector<std::vector<Value>> rows(n, std::vector<Value>(m, 0));
  for (const auto& [x, y] : g.edges()) rows[x][y] = static_cast<Value>(m - y);  // m - j + 1, 1-based j
  std::vector<std::string> warnings;
  if (g.max_degree() > 3) {
    warnings.push_back("input has a vertex of degree " + std::to_string(g.max_degree()) +
                       " (> 3); the reduced instance exceeds the 3-item / 3-agent bound");
  }
  return {Instance::create(n, m, std::move(rows), ValuationClass::kRestrictedAdditive),
          AgentOrder::identity(n), std::move(warnings)};
}

// Agent k's first-round pick equals x_k's LFMM partner, for every k.
inline bool check_equivalence(const BipartiteGraph& g) {
  const auto matching = lfmm(g);
  const auto red = reduce_lfmm_to_rr(g);
  const auto rr = round_robin_trace(red.instance, red.order);
  for (const auto& pick : rr.picks) {
    if (pick.round != 0) continue;
    if (pick.item != matching[pick.agent]) return false;
  }
  return true;
}

// Random bipartite graph with |left| >= |right| and every degree <= bound.
inline BipartiteGraph random_bipartite(std::size_t left, std::size_t right, std::size_t bound,
                                       double density, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> dl(left, 0), dr(right, 0);
  std::vector<BipartiteGraph::Edge> edges;
  for (std::size_t x = 0; x < left; ++x) {
    for (std::size_t y = 0; y < right; ++y) {
      if (dl[x] < bound && dr[y] < bound && rng.bernoulli(density)) {
        edges.emplace_back(x, y);
        ++dl[x];
        ++dr[y];
      }
    }
  }
  return BipartiteGraph::create(left, right, std::move(edges), bound);
}

}  // namespace fairpar
