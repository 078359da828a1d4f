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

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairpar/fairpar.hpp"
#include "oracles.hpp"

namespace fairpar::pram {
namespace {

using I64 = std::int64_t;

class CrewOn : public ::testing::Test {
 protected:
  void SetUp() override { set_crew_checks(true); }
  void TearDown() override { set_crew_checks(false); }
};

Reduced<I64> reduce(const std::vector<I64>& v, ReduceOp op) {
  return par_reduce(std::span<const I64>(v), op);
}

TEST(CostMeter, Composition) {
  CostMeter a;
  a.step(0);
  EXPECT_EQ(a, CostMeter{});
  a.step(4);
  a.step(2);
  EXPECT_EQ(a, (CostMeter{2, 6, 4}));
  CostMeter b{3, 3, 1};
  CostMeter seq = a;
  seq.then(b);
  EXPECT_EQ(seq, (CostMeter{5, 9, 4}));
  CostMeter par = a;
  par.alongside(b);
  EXPECT_EQ(par, (CostMeter{3, 9, 5}));
  EXPECT_EQ(ceil_log2(0), 0u);
  EXPECT_EQ(ceil_log2(1), 0u);
  EXPECT_EQ(ceil_log2(9), 4u);
  EXPECT_EQ(ceil_log2(1024), 10u);
}

TEST_F(CrewOn, ReduceSumOfFour) {
  const auto r = reduce({1, 2, 3, 4}, ReduceOp::kSum);
  EXPECT_EQ(r.value, 10);
  EXPECT_EQ(r.cost.depth, 2u);
  EXPECT_EQ(r.cost.work, 3u);
}

TEST_F(CrewOn, ReduceMinOfEmpty) {
  const auto r = reduce({}, ReduceOp::kMin);
  EXPECT_EQ(r.value, std::numeric_limits<I64>::max());
  EXPECT_EQ(r.cost.depth, 0u);
}

TEST_F(CrewOn, ReduceAndOfNineOnes) {
  const auto r = reduce(std::vector<I64>(9, 1), ReduceOp::kAnd);
  EXPECT_EQ(r.value, 1);
  EXPECT_EQ(r.cost.depth, 4u);
}

TEST(Reduce, Identities) {
  EXPECT_EQ(reduce({}, ReduceOp::kSum).value, 0);
  EXPECT_EQ(reduce({}, ReduceOp::kMax).value, std::numeric_limits<I64>::min());
  EXPECT_EQ(reduce({}, ReduceOp::kAnd).value, 1);
  EXPECT_EQ(reduce({}, ReduceOp::kOr).value, 0);
  EXPECT_EQ(reduce({7}, ReduceOp::kOr).value, 1);
  EXPECT_EQ(reduce({0}, ReduceOp::kAnd).value, 0);
}

TEST(Reduce, MatchesSequentialFold) {
  Rng rng(42);
  for (std::size_t len : {0u, 1u, 2u, 3u, 7u, 64u, 100u, 1000u, 4097u, 10000u}) {
    std::vector<I64> v(len);
    for (auto& e : v) e = rng.uniform(-1000, 1000);
    std::vector<I64> bits(len);
    for (auto& e : bits) e = rng.bernoulli(0.9) ? 1 : 0;
    for (auto op : {ReduceOp::kSum, ReduceOp::kMin, ReduceOp::kMax, ReduceOp::kAnd, ReduceOp::kOr}) {
      const auto& in = (op == ReduceOp::kAnd || op == ReduceOp::kOr) ? bits : v;
      I64 fold = identity_of(op);
      for (I64 e : in) fold = apply(op, fold, e);
      const auto r = reduce(in, op);
      EXPECT_EQ(r.value, fold) << "len " << len;
      EXPECT_EQ(r.cost.depth, ceil_log2(len));
      EXPECT_EQ(r.cost.work, len == 0 ? 0 : len - 1);
      EXPECT_LE(r.cost.depth, r.cost.work);
    }
  }
}

TEST(Reduce, DepthIsCeilLog2ForEveryLength) {
  for (std::size_t k = 1; k <= 1024; ++k) {
    ASSERT_EQ(reduce(std::vector<I64>(k, 1), ReduceOp::kSum).cost.depth, ceil_log2(k)) << k;
  }
}

TEST(Reduce, GenericOpKeepsOrder) {
  // Concatenation is associative but not commutative.
  std::vector<std::string> parts{"a", "b", "c", "d", "e"};
  const auto r = par_reduce<std::string>(std::span<const std::string>(parts), std::string{},
                                         [](const std::string& x, const std::string& y) { return x + y; });
  EXPECT_EQ(r.value, "abcde");
}

TEST(ArgMax, TiesToSmallestIndex) {
  const std::vector<I64> v{3, 9, 1, 9, 9};
  const auto r = par_argmax(v);
  EXPECT_EQ(r.value.index, 1u);
  EXPECT_EQ(r.value.value, 9);
  EXPECT_EQ(par_argmax(std::vector<I64>{}).value.index, ArgMax::kNone);
  EXPECT_EQ(par_argmax(std::vector<I64>{0, 0, 0}).value.index, 0u);
}

TEST_F(CrewOn, SortSmall) {
  const std::vector<int> keys{3, 1, 2};
  const auto s = bitonic_sort(std::span<const int>(keys));
  EXPECT_EQ(s.keys, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(s.permutation, (std::vector<std::size_t>{2, 0, 1}));
  EXPECT_EQ(s.cost.depth, 3u);
}

TEST(Sort, Empty) {
  const std::vector<int> keys;
  const auto s = bitonic_sort(std::span<const int>(keys));
  EXPECT_TRUE(s.keys.empty());
  EXPECT_EQ(s.cost.depth, 0u);
}

TEST(Sort, SixteenRandomKeysMatchStableSort) {
  Rng rng(1);
  std::vector<I64> keys(16);
  for (auto& k : keys) k = rng.uniform(0, 5);
  const auto s = bitonic_sort(std::span<const I64>(keys));
  std::vector<std::size_t> idx(16);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  for (std::size_t pos = 0; pos < 16; ++pos) {
    EXPECT_EQ(s.keys[pos], keys[idx[pos]]);
    EXPECT_EQ(s.permutation[idx[pos]], pos);
  }
}

TEST_F(CrewOn, SortedPermutationForAllLengths) {
  Rng rng(9);
  for (std::size_t len = 0; len <= 257; ++len) {
    std::vector<I64> keys(len);
    for (auto& k : keys) k = rng.uniform(-50, 50);
    const auto s = bitonic_sort(std::span<const I64>(keys));
    ASSERT_TRUE(std::is_sorted(s.keys.begin(), s.keys.end()));
    auto a = keys, b = s.keys;
    std::sort(a.begin(), a.end());
    ASSERT_EQ(a, b);
    std::vector<bool> hit(len, false);
    for (std::size_t i = 0; i < len; ++i) {
      ASSERT_EQ(s.keys[s.permutation[i]], keys[i]);
      hit[s.permutation[i]] = true;
    }
    ASSERT_TRUE(std::all_of(hit.begin(), hit.end(), [](bool h) { return h; }));
  }
}

TEST(Sort, StageCount) {
  for (std::size_t lg = 1; lg <= 10; ++lg) {
    const std::size_t k = std::size_t{1} << lg;
    std::vector<I64> keys(k, 0);
    const auto s = bitonic_sort(std::span<const I64>(keys));
    EXPECT_EQ(s.cost.depth, lg * (lg + 1) / 2);
    EXPECT_EQ(s.cost.peak_width, k / 2);
  }
}

TEST(Sort, CustomComparatorOnIndices) {
  const std::vector<int> val{5, 7, 7, 1};
  const auto s = bitonic_sort_indices(4, [&](std::size_t a, std::size_t b) { return val[a] > val[b]; });
  EXPECT_EQ(s.keys, (std::vector<std::size_t>{1, 2, 0, 3}));
}

constexpr I64 kInf = MinPlus::kInf;

TEST_F(CrewOn, ApspTwoNodes) {
  DistanceMatrix adj(2);
  adj.at(0, 1) = -1;
  adj.at(1, 0) = 1;
  const auto r = apsp_minplus(adj);
  EXPECT_EQ(r.dist.at(0, 1), -1);
  EXPECT_EQ(r.dist.at(0, 0), 0);
  EXPECT_EQ(r.dist.at(1, 0), 1);
}

TEST(Apsp, NoEdges) {
  const auto r = apsp_minplus(DistanceMatrix(4));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(r.dist.at(i, j), i == j ? 0 : kInf);
  }
}

TEST(Apsp, NegativeCycle) {
  DistanceMatrix adj(2);
  adj.at(0, 1) = -1;
  adj.at(1, 0) = -1;
  EXPECT_THROW(apsp_minplus(adj), NegativeCycle);
  EXPECT_TRUE(apsp_minplus(adj, CycleMode::kReport).negative_cycle);
}

TEST(Apsp, MatchesBellmanFord) {
  Rng rng(3);
  int tested = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + rng.index(30);
    std::vector<std::vector<I64>> w(n, std::vector<I64>(n, testing::kNoPath));
    DistanceMatrix adj(n);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (u != v && rng.bernoulli(0.25)) {
          w[u][v] = rng.uniform(-2, 8);
          adj.at(u, v) = w[u][v];
        }
      }
    }
    const auto r = apsp_minplus(adj, CycleMode::kReport);
    // Negative cycle iff Bellman-Ford still relaxes after n-1 rounds.
    bool cycle = false;
    std::vector<std::vector<I64>> dist(n);
    for (std::size_t s = 0; s < n; ++s) {
      dist[s] = testing::bellman_ford(w, s);
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          if (dist[s][u] != testing::kNoPath && w[u][v] != testing::kNoPath &&
              dist[s][u] + w[u][v] < dist[s][v]) {
            cycle = true;
          }
        }
      }
    }
    ASSERT_EQ(r.negative_cycle, cycle);
    if (cycle) continue;
    ++tested;
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t v = 0; v < n; ++v) {
        const I64 want = dist[s][v] == testing::kNoPath ? kInf : dist[s][v];
        ASSERT_EQ(r.dist.at(s, v), want) << "trial " << trial;
      }
    }
    EXPECT_LE(r.cost.depth, r.cost.work);
  }
  EXPECT_GT(tested, 40);
}

TEST(MinPlus, Overflow) {
  EXPECT_EQ(MinPlus::times(kInf, -5), kInf);
  EXPECT_EQ(MinPlus::times(3, -5), -2);
}

TEST_F(CrewOn, ClosurePath) {
  BoolMatrix adj(3);
  adj.at(0, 1) = 1;
  adj.at(1, 2) = 1;
  const auto r = transitive_closure(adj);
  EXPECT_TRUE(r.reach.at(0, 2));
  EXPECT_FALSE(r.reach.at(2, 0));
  EXPECT_FALSE(r.reach.at(0, 0));
}

TEST(Closure, EmptyGraph) {
  const auto r = transitive_closure(BoolMatrix(5));
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) EXPECT_FALSE(r.reach.at(i, j));
  }
  EXPECT_EQ(transitive_closure(BoolMatrix(0)).rounds, 0u);
}

std::vector<std::vector<bool>> random_digraph(Rng& rng, std::size_t n, double p, BoolMatrix& adj) {
  std::vector<std::vector<bool>> g(n, std::vector<bool>(n, false));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      g[u][v] = rng.bernoulli(p);
      adj.at(u, v) = g[u][v] ? 1 : 0;
    }
  }
  return g;
}

TEST(Closure, TwelveNodesSeedThree) {
  Rng rng(3);
  BoolMatrix adj(12);
  const auto g = random_digraph(rng, 12, 0.15, adj);
  const auto want = testing::dfs_reach(g);
  const auto r = transitive_closure(adj);
  for (std::size_t u = 0; u < 12; ++u) {
    for (std::size_t v = 0; v < 12; ++v) EXPECT_EQ(r.reach.at(u, v) != 0, want[u][v]);
  }
}

TEST(Closure, MatchesDfsUpToFiftyNodes) {
  Rng rng(5);
  for (std::size_t n = 1; n <= 50; ++n) {
    for (double p : {0.02, 0.08, 0.3}) {
      BoolMatrix adj(n);
      const auto g = random_digraph(rng, n, p, adj);
      const auto want = testing::dfs_reach(g);
      const auto r = transitive_closure(adj);
      ASSERT_LE(r.rounds, ceil_log2(n));
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) ASSERT_EQ(r.reach.at(u, v) != 0, want[u][v]);
      }
    }
  }
}

TEST(Closure, LongPathUsesAllRounds) {
  for (std::size_t n : {2u, 5u, 64u, 130u, 256u}) {
    BoolMatrix adj(n);
    for (std::size_t i = 0; i + 1 < n; ++i) adj.at(i, i + 1) = 1;
    const auto r = transitive_closure(adj);
    EXPECT_LE(r.rounds, ceil_log2(n));
    EXPECT_TRUE(r.reach.at(0, n - 1));
  }
}

TEST(Scheduler, RethrowsWorkerExceptions) {
  testing::for_worker_counts([](std::size_t) {
    EXPECT_THROW(parallel_for(
                     100000,
                     [](std::size_t i) {
                       if (i == 99999) throw std::runtime_error("boom");
                     },
                     16),
                 std::runtime_error);
  });
}

TEST(Scheduler, CoversEveryIndexOnceIncludingNested) {
  testing::for_worker_counts([](std::size_t) {
    std::vector<std::atomic<int>> hits(5000);
    parallel_for(
        50,
        [&](std::size_t i) {
          parallel_for(
              100, [&](std::size_t j) { hits[i * 100 + j].fetch_add(1); }, 4);
        },
        1);
    for (const auto& h : hits) ASSERT_EQ(h.load(), 1);
  });
}

TEST(Crew, DoubleClaimThrows) {
  set_crew_checks(true);
  CrewAudit audit(4);
  audit.claim(1);
  EXPECT_THROW(audit.claim(1), CrewViolation);
  audit.next_step();
  EXPECT_NO_THROW(audit.claim(1));
  set_crew_checks(false);
  CrewAudit off(4);
  EXPECT_FALSE(off.active());
  off.claim(0);
  EXPECT_NO_THROW(off.claim(0));
}

TEST(Determinism, SameValuesAndCostsAcrossWorkerCounts) {
  Rng rng(77);
  std::vector<I64> v(50000);
  for (auto& e : v) e = rng.uniform(-1'000'000, 1'000'000);
  DistanceMatrix adj(40);
  BoolMatrix badj(90);
  for (std::size_t i = 0; i < 40; ++i) {
    for (std::size_t j = 0; j < 40; ++j) adj.at(i, j) = i == j ? 0 : rng.uniform(0, 50);
  }
  for (std::size_t i = 0; i < 90; ++i) {
    for (std::size_t j = 0; j < 90; ++j) badj.at(i, j) = rng.bernoulli(0.03) ? 1 : 0;
  }
  std::vector<Reduced<I64>> sums;
  std::vector<Sorted<I64>> sorts;
  std::vector<ApspResult> apsps;
  std::vector<ClosureResult> closures;
  testing::for_worker_counts([&](std::size_t) {
    sums.push_back(reduce(v, ReduceOp::kSum));
    sorts.push_back(bitonic_sort(std::span<const I64>(v)));
    apsps.push_back(apsp_minplus(adj));
    closures.push_back(transitive_closure(badj));
  });
  for (std::size_t k = 1; k < 3; ++k) {
    EXPECT_EQ(sums[k].value, sums[0].value);
    EXPECT_EQ(sums[k].cost, sums[0].cost);
    EXPECT_EQ(sorts[k].keys, sorts[0].keys);
    EXPECT_EQ(sorts[k].permutation, sorts[0].permutation);
    EXPECT_EQ(sorts[k].cost, sorts[0].cost);
    EXPECT_EQ(apsps[k].dist, apsps[0].dist);
    EXPECT_EQ(apsps[k].cost, apsps[0].cost);
    EXPECT_EQ(closures[k].reach, closures[0].reach);
    EXPECT_EQ(closures[k].cost, closures[0].cost);
  }
}

}  // namespace
}  // namespace fairpar::pram
