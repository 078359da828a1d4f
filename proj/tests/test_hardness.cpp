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


#include <gtest/gtest.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "fairpar/fairpar.hpp"

namespace fairpar {
namespace {

BipartiteGraph three_edges() {
  return BipartiteGraph::create(2, 2, {{0, 0}, {0, 1}, {1, 0}}, 3);
}

TEST(Lfmm, Examples) {
  EXPECT_EQ(lfmm(three_edges()), (LeftMatching{0, std::nullopt}));
  EXPECT_EQ(lfmm(BipartiteGraph::create(2, 2, {})), (LeftMatching{std::nullopt, std::nullopt}));
  EXPECT_EQ(lfmm(BipartiteGraph::create(2, 2, {{0, 0}, {1, 1}})), (LeftMatching{0, 1}));
}

TEST(Lfmm, LaterVertexTakesNextFree) {
  const auto g = BipartiteGraph::create(3, 3, {{0, 1}, {1, 1}, {1, 2}, {2, 0}, {2, 2}});
  EXPECT_EQ(lfmm(g), (LeftMatching{1, 2, 0}));
}

TEST(Reduction, Examples) {
  const auto r = reduce_lfmm_to_rr(three_edges());
  EXPECT_EQ(r.instance.rows(), (std::vector<std::vector<Value>>{{2, 1}, {2, 0}}));
  EXPECT_EQ(r.order.sigma(), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.instance.valuation_class(), ValuationClass::kRestrictedAdditive);
  EXPECT_TRUE(r.warnings.empty());

  const auto empty = reduce_lfmm_to_rr(BipartiteGraph::create(3, 2, {}));
  EXPECT_EQ(empty.instance.rows(), (std::vector<std::vector<Value>>{{0, 0}, {0, 0}, {0, 0}}));

  const auto single = reduce_lfmm_to_rr(BipartiteGraph::create(1, 1, {{0, 0}}));
  EXPECT_EQ(single.instance.rows(), (std::vector<std::vector<Value>>{{1}}));
}

TEST(Reduction, HighDegreeWarnsButSucceeds) {
  std::vector<BipartiteGraph::Edge> edges;
  for (std::size_t y = 0; y < 4; ++y) edges.emplace_back(0, y);
  const auto r = reduce_lfmm_to_rr(BipartiteGraph::create(4, 4, edges));
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("degree 4"), std::string::npos);
  EXPECT_EQ(r.instance.rows()[0], (std::vector<Value>{4, 3, 2, 1}));
  EXPECT_TRUE(check_equivalence(BipartiteGraph::create(4, 4, edges)));
}

TEST(Graph, CreateErrors) {
  EXPECT_THROW(BipartiteGraph::create(0, 0, {}), InvalidInput);
  EXPECT_THROW(BipartiteGraph::create(1, 2, {}), InvalidInput);
  EXPECT_THROW(BipartiteGraph::create(2, 2, {{2, 0}}), InvalidInput);
  EXPECT_THROW(BipartiteGraph::create(2, 2, {{0, 0}, {0, 1}}, 1), InvalidInput);
  const auto dup = BipartiteGraph::create(2, 2, {{1, 0}, {0, 0}, {1, 0}});
  EXPECT_EQ(dup.edges(), (std::vector<BipartiteGraph::Edge>{{0, 0}, {1, 0}}));
}

TEST(Equivalence, Examples) {
  EXPECT_TRUE(check_equivalence(three_edges()));
  EXPECT_TRUE(check_equivalence(BipartiteGraph::create(1, 1, {})));
}

TEST(Equivalence, LaterRoundsMayTakeUnmatchedItems) {
  // x1 - y1, x1 - y2: LFMM leaves y2 free, Round-Robin gives it to agent 1
  // in round two. Only first-round picks correspond.
  const auto g = BipartiteGraph::create(2, 2, {{0, 0}, {0, 1}});
  const auto r = reduce_lfmm_to_rr(g);
  const auto x = round_robin(r.instance, r.order);
  EXPECT_EQ(x.bundle(0), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(lfmm(g), (LeftMatching{0, std::nullopt}));
  EXPECT_TRUE(check_equivalence(g));
}

TEST(Equivalence, RandomGraphs) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    const std::size_t right = 1 + rng.index(12);
    const std::size_t left = right + rng.index(13 - right);
    const auto g = random_bipartite(left, right, 3, 0.1 + 0.8 * rng.unit(), seed);
    ASSERT_TRUE(check_equivalence(g)) << seed;
  }
}

TEST(Properties, MatchingIsMaximalAndDegreesCarryOver) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng(seed);
    const std::size_t right = 1 + rng.index(12);
    const std::size_t left = right + rng.index(13 - right);
    const auto g = random_bipartite(left, right, 3, rng.unit(), seed);
    ASSERT_LE(g.max_degree(), 3u);

    const auto match = lfmm(g);
    std::vector<bool> used(right, false);
    for (const auto& y : match) {
      if (!y) continue;
      ASSERT_FALSE(used[*y]);
      used[*y] = true;
    }
    for (const auto& [x, y] : g.edges()) {
      ASSERT_TRUE(match[x].has_value() || used[y]) << "edge left free, seed " << seed;
    }

    const auto r = reduce_lfmm_to_rr(g);
    ASSERT_TRUE(r.warnings.empty());
    for (std::size_t i = 0; i < left; ++i) {
      std::size_t valued = 0;
      for (std::size_t j = 0; j < right; ++j) valued += r.instance.value(i, j) > 0;
      ASSERT_LE(valued, 3u);
    }
    for (std::size_t j = 0; j < right; ++j) {
      std::size_t valuers = 0;
      for (std::size_t i = 0; i < left; ++i) {
        const Value v = r.instance.value(i, j);
        ASSERT_TRUE(v == 0 || v == static_cast<Value>(right - j));
        valuers += v > 0;
      }
      ASSERT_LE(valuers, 3u);
    }
  }
}

TEST(Properties, RandomBipartiteIsDeterministic) {
  const auto a = random_bipartite(10, 8, 3, 0.5, 42);
  const auto b = random_bipartite(10, 8, 3, 0.5, 42);
  EXPECT_EQ(a.edges(), b.edges());
  EXPECT_EQ(a.degree_bound(), std::optional<std::size_t>(3));
}

}  // namespace
}  // namespace fairpar
