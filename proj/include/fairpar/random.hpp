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

// Seeded generators. Only std::mt19937_64's raw output is used (its
// sequence is fixed by the standard), so instances are identical across
// standard libraries.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "fairpar/model.hpp"

namespace fairpar {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
  }

  std::size_t index(std::size_t count) {
    return static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(count) - 1));
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

struct InstanceParams {
  std::size_t n = 2;
  std::size_t m = 4;
  ValuationClass cls = ValuationClass::kAdditive;
  Value min_value = 1;
  Value max_value = 10;
  // Probability that an agent values an item at all.
  double density = 1.0;
  // Distinct inherent values for RestrictedAdditive.
  std::size_t t = 2;
};

inline void check_params(const InstanceParams& p) {
  if (p.n == 0) throw InvalidInput("generator: n must be positive");
  if (p.min_value < 0 || p.min_value > p.max_value || p.max_value > kMaxValue) {
    throw InvalidInput("generator: need 0 <= min_value <= max_value <= 10^12");
  }
  if (!(p.density >= 0.0 && p.density <= 1.0)) {
    throw InvalidInput("generator: density must lie in [0, 1]");
  }
  if (p.cls == ValuationClass::kRestrictedAdditive && p.t == 0) {
    throw InvalidInput("generator: t must be positive for restricted-additive instances");
  }
}

inline Instance random_instance(const InstanceParams& p, std::uint64_t seed) {
  check_params(p);
  Rng rng(seed);
  std::vector<std::vector<Value>> rows(p.n, std::vector<Value>(p.m, 0));
  switch (p.cls) {
    case ValuationClass::kAdditive:
      for (auto& row : rows) {
        for (auto& v : row) v = rng.bernoulli(p.density) ? rng.uniform(p.min_value, p.max_value) : 0;
      }
      break;
    case ValuationClass::kBinary:
      for (auto& row : rows) {
        for (auto& v : row) v = rng.bernoulli(p.density) ? 1 : 0;
      }
      break;
    case ValuationClass::kIdentical:
      for (auto& v : rows[0]) v = rng.bernoulli(p.density) ? rng.uniform(p.min_value, p.max_value) : 0;
      for (std::size_t i = 1; i < p.n; ++i) rows[i] = rows[0];
      break;
    case ValuationClass::kRestrictedAdditive: {
      const Value lo = std::max<Value>(p.min_value, 1);
      const auto range = static_cast<std::size_t>(p.max_value - lo + 1);
      const std::size_t t = std::min(p.t, p.max_value >= lo ? range : std::size_t{0});
      std::vector<Value> pool;
      while (pool.size() < t) {
        const Value v = rng.uniform(lo, p.max_value);
        if (std::find(pool.begin(), pool.end(), v) == pool.end()) pool.push_back(v);
      }
      for (std::size_t j = 0; j < p.m && !pool.empty(); ++j) {
        const Value inherent = pool[rng.index(pool.size())];
        for (std::size_t i = 0; i < p.n; ++i) rows[i][j] = rng.bernoulli(p.density) ? inherent : 0;
      }
      break;
    }
  }
  return Instance::create(p.n, p.m, std::move(rows), p.cls);
}

// Every item to a uniformly random agent.
inline Allocation random_allocation(std::size_t agents, std::size_t items, Rng& rng) {
  std::vector<std::size_t> owner(items);
  for (auto& o : owner) o = rng.index(agents);
  return Allocation::from_owners(agents, owner);
}

}  // namespace fairpar
