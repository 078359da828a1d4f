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
#include <set>
#include <string>
#include <vector>

#include "fairpar/fairpar.hpp"
#include "oracles.hpp"

namespace fairpar {
namespace {

using testing::worked_allocation;
using testing::worked_instance;

RawInstance raw(std::int64_t n, std::int64_t m, std::string cls,
                std::vector<std::vector<RawInstance::Entry>> values) {
  return RawInstance{n, m, std::move(cls), std::move(values)};
}

RawInstance raw_from(const Instance& inst) {
  RawInstance r{static_cast<std::int64_t>(inst.agents()), static_cast<std::int64_t>(inst.items()),
                std::string(to_string(inst.valuation_class())), {}};
  for (const auto& row : inst.rows()) r.values.emplace_back(row.begin(), row.end());
  return r;
}

std::uint64_t bounded_count(std::uint64_t n, std::uint64_t m) {
  std::uint64_t r = 1;
  while (m-- > 0 && r <= 1'000'000) r *= n;
  return r;
}

TEST(ValidateInstance, BinaryIdentityMatrix) {
  const auto inst = validate_instance(raw(2, 2, "binary", {{1, 0}, {0, 1}}));
  EXPECT_EQ(inst.valuation_class(), ValuationClass::kBinary);
  EXPECT_EQ(inst.value(1, 1), 1);
}

TEST(ValidateInstance, RestrictedAdditiveRejectsTwoNonzeroValues) {
  try {
    validate_instance(raw(2, 2, "restricted-additive", {{2, 0}, {3, 0}}));
    FAIL() << "expected InvalidInput";
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("item 1 has nonzero values {2,3}"), std::string::npos)
        << e.what();
  }
}

TEST(ValidateInstance, WorkedInstance) {
  const auto inst = validate_instance(raw(3, 3, "additive", {{1, 3, 2}, {0, 1, 0}, {2, 0, 2}}));
  EXPECT_EQ(inst.max_value(), 3);
  EXPECT_EQ(inst.agents(), 3u);
  EXPECT_EQ(inst.items(), 3u);
}

TEST(ValidateInstance, Errors) {
  EXPECT_THROW(validate_instance(raw(1, 1, "additive", {{-1}})), InvalidInput);
  EXPECT_THROW(validate_instance(raw(1, 1, "additive", {{1.5}})), InvalidInput);
  EXPECT_NO_THROW(validate_instance(raw(1, 1, "additive", {{2.0}})));
  EXPECT_THROW(validate_instance(raw(2, 1, "additive", {{1}})), InvalidInput);
  EXPECT_THROW(validate_instance(raw(1, 2, "additive", {{1}})), InvalidInput);
  EXPECT_THROW(validate_instance(raw(0, 0, "additive", {})), InvalidInput);
  EXPECT_THROW(validate_instance(raw(1, 1, "fancy", {{1}})), InvalidInput);
  EXPECT_THROW(validate_instance(raw(1, 1, "binary", {{2}})), InvalidInput);
  EXPECT_THROW(validate_instance(raw(2, 1, "identical", {{1}, {2}})), InvalidInput);
  EXPECT_THROW(validate_instance(raw(1, 1, "additive", {{kMaxValue + 1}})), InvalidInput);
}

TEST(ValidateInstance, InherentValues) {
  const auto inst = Instance::create(3, 4, {{5, 0, 2, 0}, {5, 3, 0, 0}, {0, 3, 2, 0}},
                                     ValuationClass::kRestrictedAdditive);
  ASSERT_TRUE(inst.inherent_values().has_value());
  EXPECT_EQ(*inst.inherent_values(), (std::vector<Value>{5, 3, 2}));
  EXPECT_EQ(inst.inherent_value(3), 0);
  EXPECT_FALSE(inst.valued_by_someone(3));
  EXPECT_FALSE(worked_instance().inherent_values().has_value());
}

TEST(Allocation, RejectsOverlapAndRange) {
  EXPECT_THROW(Allocation::from_bundles(2, {{0}, {0}}), InvalidInput);
  EXPECT_THROW(Allocation::from_bundles(2, {{2}, {}}), InvalidInput);
  const auto x = Allocation::from_bundles(3, {{2, 0}, {}});
  EXPECT_EQ(x.bundle(0), (std::vector<std::size_t>{0, 2}));
  EXPECT_FALSE(x.complete());
  EXPECT_EQ(x.unallocated(), (std::vector<std::size_t>{1}));
  EXPECT_EQ(x.owner(2), 0u);
}

TEST(Allocation, IncompleteOnlyForUnvaluedItems) {
  const auto inst = Instance::create(2, 2, {{1, 0}, {1, 0}}, ValuationClass::kAdditive);
  EXPECT_NO_THROW(require_complete(inst, Allocation::from_bundles(2, {{0}, {}}), "t"));
  EXPECT_THROW(require_complete(inst, Allocation::from_bundles(2, {{}, {1}}), "t"), InvalidInput);
  EXPECT_THROW(require_complete(inst, Allocation::from_bundles(3, {{0}, {1}}), "t"), InvalidInput);
}

TEST(BundleValue, SumsEntries) {
  const auto inst = worked_instance();
  const auto bv = make_bundle_value(inst, 0, {0, 2});
  EXPECT_EQ(bv.value, 3);
  EXPECT_EQ(bundle_value(inst, 2, std::vector<std::size_t>{0, 1, 2}), 4);
}

TEST(BruteForcePo, SingleAgent) {
  const auto inst = Instance::create(1, 3, {{4, 0, 1}}, ValuationClass::kAdditive);
  EXPECT_TRUE(brute_force_po_check(inst, Allocation::from_bundles(3, {{0, 1, 2}})));
}

TEST(BruteForcePo, SwapDominates) {
  const auto inst = Instance::create(2, 2, {{1, 0}, {0, 1}}, ValuationClass::kAdditive);
  EXPECT_FALSE(brute_force_po_check(inst, Allocation::from_bundles(2, {{1}, {0}})));
}

TEST(BruteForcePo, WorkedAllocation) {
  EXPECT_TRUE(brute_force_po_check(worked_instance(), worked_allocation()));
}

TEST(BruteForcePo, EnumerationCap) {
  const auto inst = random_instance({.n = 10, .m = 10}, 1);
  Rng rng(1);
  EXPECT_THROW(brute_force_po_check(inst, random_allocation(10, 10, rng)), CapExceeded);
}

TEST(BruteForcePo, AgreesWithDoubleLoop) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    const std::size_t n = 1 + rng.index(4);
    std::size_t m = rng.index(5);
    while (m > 0 && bounded_count(n, m) > 256) --m;
    InstanceParams p{n, m, ValuationClass::kAdditive, 0, 4, 0.8, 2};
    const auto inst = random_instance(p, seed);
    const auto x = random_allocation(n, m, rng);
    ASSERT_EQ(brute_force_po_check(inst, x), testing::naive_po(inst, x)) << "seed " << seed;
    ++checked;
  }
  EXPECT_EQ(checked, 300);
}

TEST(BruteForceMinPayments, NoEnvyNoConstraints) {
  const auto inst = Instance::create(2, 2, {{5, 1}, {1, 5}}, ValuationClass::kAdditive);
  const auto q = brute_force_min_payments(inst, Allocation::from_bundles(2, {{0}, {1}}), {});
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, (PaymentVector{0, 0}));
}

TEST(BruteForceMinPayments, WorkedInstance) {
  const auto q = brute_force_min_payments(worked_instance(), worked_allocation(), {});
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, (PaymentVector{1, 0, 1}));
}

TEST(BruteForceMinPayments, WorkedInstanceWithConstraint) {
  const std::vector<PaymentConstraint> cs{{0, 0, 1, 0}};
  const auto q = brute_force_min_payments(worked_instance(), worked_allocation(), cs);
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, (PaymentVector{2, 1, 2}));
}

TEST(BruteForceMinPayments, CapExceeded) {
  const auto inst = Instance::create(4, 4, std::vector<std::vector<Value>>(4, {100, 100, 100, 100}),
                                     ValuationClass::kIdentical);
  Rng rng(2);
  EXPECT_THROW(brute_force_min_payments(inst, random_allocation(4, 4, rng), {}), CapExceeded);
}

TEST(BruteForceMinPayments, OutputIsFeasibleAndBelowEveryFeasibleVector) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed + 1000);
    const std::size_t n = 1 + rng.index(3), m = rng.index(4);
    const auto inst = random_instance({n, m, ValuationClass::kAdditive, 0, 3, 0.9, 2}, seed);
    const auto x = random_allocation(n, m, rng);
    const Value cap = payment_cap(inst);
    std::vector<PaymentConstraint> cs;
    for (std::size_t k = rng.index(3); k > 0; --k) {
      cs.push_back({rng.index(n), rng.uniform(0, cap), rng.index(n), rng.uniform(0, cap)});
    }
    const auto q = brute_force_min_payments(inst, x, cs);
    if (!q) continue;
    EXPECT_TRUE(envy_free_with_payments(inst, x, *q));
    EXPECT_TRUE(satisfies_all(cs, *q));
    // Every feasible vector dominates q.
    PaymentVector r(n, 0);
    while (true) {
      if (envy_free_with_payments(inst, x, r) && satisfies_all(cs, r)) {
        for (std::size_t i = 0; i < n; ++i) ASSERT_LE((*q)[i], r[i]) << "seed " << seed;
      }
      std::size_t i = 0;
      while (i < n && ++r[i] > cap) r[i++] = 0;
      if (i == n) break;
    }
  }
}

TEST(PaymentConstraint, Semantics) {
  const PaymentConstraint c{0, 1, 1, 0};
  EXPECT_TRUE(c.satisfied_by(std::vector<Value>{1, 0}));
  EXPECT_FALSE(c.satisfied_by(std::vector<Value>{2, 0}));
  EXPECT_TRUE(c.satisfied_by(std::vector<Value>{2, 1}));
  EXPECT_THROW(check_constraints(worked_instance(), std::vector<PaymentConstraint>{{0, 10, 1, 0}}),
               InvalidInput);
  EXPECT_THROW(check_constraints(worked_instance(), std::vector<PaymentConstraint>{{0, 0, 3, 0}}),
               InvalidInput);
  EXPECT_EQ(payment_cap(worked_instance()), 9);
}

TEST(RandomInstance, EmptyItemSet) {
  const auto inst = random_instance({.n = 2, .m = 0}, 5);
  EXPECT_EQ(inst.items(), 0u);
  EXPECT_EQ(inst.agents(), 2u);
}

TEST(RandomInstance, Deterministic) {
  for (auto cls : {ValuationClass::kAdditive, ValuationClass::kRestrictedAdditive,
                   ValuationClass::kBinary, ValuationClass::kIdentical}) {
    InstanceParams p{4, 7, cls, 0, 9, 0.6, 3};
    EXPECT_EQ(random_instance(p, 11), random_instance(p, 11));
  }
  EXPECT_NE(random_instance({.n = 3, .m = 6}, 1), random_instance({.n = 3, .m = 6}, 2));
}

TEST(RandomInstance, RestrictedAdditiveColumns) {
  InstanceParams p{5, 12, ValuationClass::kRestrictedAdditive, 1, 20, 0.5, 2};
  const auto inst = random_instance(p, 7);
  for (std::size_t j = 0; j < inst.items(); ++j) {
    std::set<Value> nonzero;
    for (std::size_t i = 0; i < inst.agents(); ++i) {
      if (inst.value(i, j) != 0) nonzero.insert(inst.value(i, j));
    }
    EXPECT_LE(nonzero.size(), 1u);
  }
  EXPECT_LE(inst.inherent_values()->size(), 2u);
  EXPECT_NO_THROW(validate_instance(raw_from(inst)));
}

TEST(RandomInstance, ClassesHold) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_NO_THROW(random_instance({3, 5, ValuationClass::kBinary, 0, 1, 0.5, 1}, seed));
    EXPECT_NO_THROW(random_instance({3, 5, ValuationClass::kIdentical, 0, 9, 0.5, 1}, seed));
  }
  EXPECT_THROW(random_instance({.n = 0, .m = 1}, 1), InvalidInput);
  EXPECT_THROW(random_instance({2, 1, ValuationClass::kAdditive, 5, 1, 1.0, 1}, 1), InvalidInput);
}

TEST(Io, InstanceRoundTrip) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (auto cls : {ValuationClass::kAdditive, ValuationClass::kRestrictedAdditive,
                     ValuationClass::kBinary, ValuationClass::kIdentical}) {
      const auto inst = random_instance({3, 4, cls, 0, 1000, 0.7, 2}, seed);
      EXPECT_EQ(io::parse_instance(io::to_json(inst).dump()), inst);
    }
  }
}

TEST(Io, AllocationAndOrderRoundTrip) {
  const auto inst = worked_instance();
  const auto x = worked_allocation();
  EXPECT_EQ(io::to_json(x).dump(), "[[3],[2],[1]]");
  EXPECT_EQ(io::allocation_from_json(io::to_json(x), inst), x);
  const auto o = AgentOrder::create({2, 0, 1});
  EXPECT_EQ(io::order_from_json(io::to_json(o), 3).sigma(), o.sigma());
  const std::vector<PaymentConstraint> cs{{0, 2, 2, 1}};
  const auto back = io::constraints_from_json(io::constraints_to_json(cs), inst);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].j, 2u);
  EXPECT_EQ(back[0].x, 2);
}

TEST(Io, ParseErrorsReportLineAndColumn) {
  try {
    io::parse_instance("{\n  \"n\": 2,\n  \"m\": ,\n}");
    FAIL() << "expected InvalidInput";
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("line 3, column 8"), std::string::npos) << e.what();
  }
}

TEST(Io, SchemaErrors) {
  EXPECT_THROW(io::parse_instance(R"({"n":1,"m":1,"values":[[1]]})"), InvalidInput);
  EXPECT_THROW(io::parse_instance(R"({"n":1,"m":1,"class":"additive","values":[["a"]]})"),
               InvalidInput);
  const auto inst = worked_instance();
  EXPECT_THROW(io::allocation_from_json(io::Json::parse("[[1],[2]]"), inst), InvalidInput);
  EXPECT_THROW(io::allocation_from_json(io::Json::parse("[[0],[2],[3]]"), inst), InvalidInput);
  EXPECT_THROW(io::allocation_from_json(io::Json::parse("[[1],[1],[3]]"), inst), InvalidInput);
  EXPECT_THROW(io::payments_from_json(io::Json::parse("[1,-1,0]"), 3), InvalidInput);
  EXPECT_THROW(io::order_from_json(io::Json::parse("[1,1,2]"), 3), InvalidInput);
  EXPECT_THROW(io::graph_from_json(io::Json::parse(R"({"left":1,"right":2,"edges":[]})")),
               InvalidInput);
}

}  // namespace
}  // namespace fairpar
