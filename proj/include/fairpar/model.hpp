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

// Core domain types: valuation instances, allocations and bundle values.
//
// Agents and items are 0-based in memory. File formats (see io.hpp) are
// 1-based.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fairpar/error.hpp"

namespace fairpar {

using Value = std::int64_t;

// Largest single valuation accepted. Keeps every bundle sum, envy weight and
// payment comfortably inside 64 bits for up to kMaxItems items.
inline constexpr Value kMaxValue = 1'000'000'000'000;
inline constexpr std::size_t kMaxItems = 1'000'000;

inline constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

enum class ValuationClass { kAdditive, kRestrictedAdditive, kBinary, kIdentical };

inline std::string_view to_string(ValuationClass c) {
  switch (c) {
    case ValuationClass::kAdditive: return "additive";
    case ValuationClass::kRestrictedAdditive: return "restricted-additive";
    case ValuationClass::kBinary: return "binary";
    case ValuationClass::kIdentical: return "identical";
  }
  return "additive";
}

inline std::optional<ValuationClass> parse_valuation_class(std::string_view s) {
  if (s == "additive") return ValuationClass::kAdditive;
  if (s == "restricted-additive") return ValuationClass::kRestrictedAdditive;
  if (s == "binary") return ValuationClass::kBinary;
  if (s == "identical") return ValuationClass::kIdentical;
  return std::nullopt;
}

// Unvalidated instance description. Entries may be doubles when they come
// from a text file; validation rejects anything non-integral.
struct RawInstance {
  using Entry = std::variant<std::int64_t, double>;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::string valuation_class = "additive";
  std::vector<std::vector<Entry>> values;
};

class Instance;
Instance validate_instance(const RawInstance& raw);

// Immutable valuation profile: n agents, m items, v(i, j) >= 0.
class Instance {
 public:
  // Validates and builds. Throws InvalidInput with a diagnostic.
  static Instance create(std::size_t n, std::size_t m, std::vector<std::vector<Value>> rows,
                         ValuationClass cls) {
    if (n == 0) throw InvalidInput("instance: agent count n must be positive");
    if (m > kMaxItems) throw InvalidInput("instance: too many items (max 1000000)");
    if (rows.size() != n) {
      throw InvalidInput("instance: expected " + std::to_string(n) + " value rows, got " +
                         std::to_string(rows.size()));
    }
    Instance inst;
    inst.n_ = n;
    inst.m_ = m;
    inst.class_ = cls;
    inst.values_.reserve(n * m);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != m) {
        throw InvalidInput("instance: row " + std::to_string(i + 1) + " has " +
                           std::to_string(rows[i].size()) + " entries, expected " +
                           std::to_string(m));
      }
      for (std::size_t j = 0; j < m; ++j) {
        const Value v = rows[i][j];
        if (v < 0) {
          throw InvalidInput("instance: negative value " + std::to_string(v) + " at agent " +
                             std::to_string(i + 1) + ", item " + std::to_string(j + 1));
        }
        if (v > kMaxValue) {
          throw InvalidInput("instance: value at agent " + std::to_string(i + 1) + ", item " +
                             std::to_string(j + 1) + " exceeds 10^12");
        }
        inst.values_.push_back(v);
      }
    }
    inst.check_class();
    return inst;
  }

  std::size_t agents() const { return n_; }
  std::size_t items() const { return m_; }
  ValuationClass valuation_class() const { return class_; }

  Value value(std::size_t agent, std::size_t item) const { return values_[agent * m_ + item]; }
  std::span<const Value> row(std::size_t agent) const {
    return {values_.data() + agent * m_, m_};
  }

  // Distinct nonzero inherent values in decreasing order; present iff the
  // class is RestrictedAdditive.
  const std::optional<std::vector<Value>>& inherent_values() const { return inherent_; }

  // Inherent value v(j) of an item: its unique nonzero entry, or 0 when no
  // agent values it.
  Value inherent_value(std::size_t item) const {
    Value v = 0;
    for (std::size_t i = 0; i < n_; ++i) v = std::max(v, value(i, item));
    return v;
  }

  // Largest entry of the matrix (0 for empty instances).
  Value max_value() const {
    Value d = 0;
    for (Value v : values_) d = std::max(d, v);
    return d;
  }

  bool valued_by_someone(std::size_t item) const { return inherent_value(item) > 0; }

  std::vector<std::vector<Value>> rows() const {
    std::vector<std::vector<Value>> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i].assign(row(i).begin(), row(i).end());
    return out;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.class_ == b.class_ && a.values_ == b.values_;
  }

 private:
  Instance() = default;

  void check_class() {
    switch (class_) {
      case ValuationClass::kAdditive:
        break;
      case ValuationClass::kBinary:
        for (std::size_t i = 0; i < n_; ++i) {
          for (std::size_t j = 0; j < m_; ++j) {
            if (value(i, j) > 1) {
              throw InvalidInput("instance: class binary but agent " + std::to_string(i + 1) +
                                 ", item " + std::to_string(j + 1) + " has value " +
                                 std::to_string(value(i, j)));
            }
          }
        }
        break;
      case ValuationClass::kIdentical:
        for (std::size_t i = 1; i < n_; ++i) {
          if (!std::equal(row(i).begin(), row(i).end(), row(0).begin())) {
            throw InvalidInput("instance: class identical but row " + std::to_string(i + 1) +
                               " differs from row 1");
          }
        }
        break;
      case ValuationClass::kRestrictedAdditive: {
        std::set<Value, std::greater<>> distinct;
        for (std::size_t j = 0; j < m_; ++j) {
          Value seen = 0;
          for (std::size_t i = 0; i < n_; ++i) {
            const Value v = value(i, j);
            if (v == 0) continue;
            if (seen != 0 && v != seen) {
              throw InvalidInput("instance: class restricted-additive but item " +
                                 std::to_string(j + 1) + " has nonzero values {" +
                                 std::to_string(seen) + "," + std::to_string(v) + "}");
            }
            seen = v;
          }
          if (seen != 0) distinct.insert(seen);
        }
        inherent_.emplace(distinct.begin(), distinct.end());
        break;
      }
    }
  }

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  ValuationClass class_ = ValuationClass::kAdditive;
  std::vector<Value> values_;
  std::optional<std::vector<Value>> inherent_;
};

inline Instance validate_instance(const RawInstance& raw) {
  if (raw.n <= 0) throw InvalidInput("instance: n must be a positive integer");
  if (raw.m < 0) throw InvalidInput("instance: m must be a nonnegative integer");
  const auto cls = parse_valuation_class(raw.valuation_class);
  if (!cls) {
    throw InvalidInput("instance: unknown class '" + raw.valuation_class +
                       "' (expected additive, restricted-additive, binary or identical)");
  }
  const auto n = static_cast<std::size_t>(raw.n);
  const auto m = static_cast<std::size_t>(raw.m);
  if (raw.values.size() != n) {
    throw InvalidInput("instance: n=" + std::to_string(n) + " but values has " +
                       std::to_string(raw.values.size()) + " rows");
  }
  std::vector<std::vector<Value>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (raw.values[i].size() != m) {
      throw InvalidInput("instance: m=" + std::to_string(m) + " but row " + std::to_string(i + 1) +
                         " has " + std::to_string(raw.values[i].size()) + " entries");
    }
    rows[i].reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
      const auto& e = raw.values[i][j];
      Value v = 0;
      if (const auto* d = std::get_if<double>(&e)) {
        if (!std::isfinite(*d) || std::floor(*d) != *d ||
            std::fabs(*d) > static_cast<double>(kMaxValue)) {
          throw InvalidInput("instance: non-integral value at agent " + std::to_string(i + 1) +
                             ", item " + std::to_string(j + 1));
        }
        v = static_cast<Value>(*d);
      } else {
        v = std::get<std::int64_t>(e);
      }
      rows[i].push_back(v);
    }
  }
  return Instance::create(n, m, std::move(rows), *cls);
}

// Partition of (some of) the items into n bundles. Bundles are kept sorted.
class Allocation {
 public:
  static Allocation from_bundles(std::size_t items, std::vector<std::vector<std::size_t>> bundles) {
    Allocation a;
    a.owner_.assign(items, kUnassigned);
    for (std::size_t i = 0; i < bundles.size(); ++i) {
      std::sort(bundles[i].begin(), bundles[i].end());
      for (std::size_t g : bundles[i]) {
        if (g >= items) {
          throw InvalidInput("allocation: item " + std::to_string(g + 1) + " out of range 1.." +
                             std::to_string(items));
        }
        if (a.owner_[g] != kUnassigned) {
          throw InvalidInput("allocation: item " + std::to_string(g + 1) +
                             " appears in more than one bundle");
        }
        a.owner_[g] = i;
      }
    }
    a.bundles_ = std::move(bundles);
    return a;
  }

  // owner[g] is the receiving agent or kUnassigned.
  static Allocation from_owners(std::size_t agents, std::span<const std::size_t> owner) {
    std::vector<std::vector<std::size_t>> bundles(agents);
    for (std::size_t g = 0; g < owner.size(); ++g) {
      if (owner[g] == kUnassigned) continue;
      if (owner[g] >= agents) throw InvalidInput("allocation: owner index out of range");
      bundles[owner[g]].push_back(g);
    }
    return from_bundles(owner.size(), std::move(bundles));
  }

  std::size_t agents() const { return bundles_.size(); }
  std::size_t items() const { return owner_.size(); }
  const std::vector<std::size_t>& bundle(std::size_t agent) const { return bundles_[agent]; }
  const std::vector<std::vector<std::size_t>>& bundles() const { return bundles_; }
  std::size_t owner(std::size_t item) const { return owner_[item]; }

  bool complete() const {
    return std::none_of(owner_.begin(), owner_.end(),
                        [](std::size_t o) { return o == kUnassigned; });
  }

  std::vector<std::size_t> unallocated() const {
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < owner_.size(); ++g) {
      if (owner_[g] == kUnassigned) out.push_back(g);
    }
    return out;
  }

  friend bool operator==(const Allocation& a, const Allocation& b) {
    return a.bundles_ == b.bundles_ && a.owner_ == b.owner_;
  }

 private:
  std::vector<std::vector<std::size_t>> bundles_;
  std::vector<std::size_t> owner_;
};

// v_i(S) for one agent and one bundle.
struct BundleValue {
  std::size_t agent = 0;
  std::vector<std::size_t> bundle;
  Value value = 0;
};

inline Value bundle_value(const Instance& inst, std::size_t agent,
                          std::span<const std::size_t> bundle) {
  Value total = 0;
  for (std::size_t g : bundle) total += inst.value(agent, g);
  return total;
}

inline BundleValue make_bundle_value(const Instance& inst, std::size_t agent,
                                     std::vector<std::size_t> bundle) {
  BundleValue bv{agent, std::move(bundle), 0};
  bv.value = bundle_value(inst, agent, bv.bundle);
  return bv;
}

// Shape check shared by every consumer of (instance, allocation) pairs.
inline void check_compatible(const Instance& inst, const Allocation& x) {
  if (x.agents() != inst.agents() || x.items() != inst.items()) {
    throw InvalidInput("allocation has " + std::to_string(x.agents()) + " bundles over " +
                       std::to_string(x.items()) + " items; instance has n=" +
                       std::to_string(inst.agents()) + ", m=" + std::to_string(inst.items()));
  }
}

// Fairness predicates are defined on complete allocations. Items that no
// agent values never change any bundle value, so leaving them out is
// accepted; anything else unallocated is an error.
inline void require_complete(const Instance& inst, const Allocation& x, std::string_view what) {
  check_compatible(inst, x);
  for (std::size_t g : x.unallocated()) {
    if (inst.valued_by_someone(g)) {
      throw InvalidInput(std::string(what) + ": allocation is incomplete (item " +
                         std::to_string(g + 1) + " is unallocated)");
    }
  }
}

}  // namespace fairpar
