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

// Exhaustive ground-truth checks. Single-threaded and deliberately naive;
// every fast path in the library is tested against these.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <vector>

#include "fairpar/model.hpp"
#include "fairpar/payments.hpp"

namespace fairpar {

inline constexpr std::uint64_t kEnumerationCap = 10'000'000;

namespace detail {

// base^exp, or nullopt once it passes `cap`.
inline std::optional<std::uint64_t> bounded_pow(std::uint64_t base, std::uint64_t exp,
                                                std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t k = 0; k < exp; ++k) {
    if (base != 0 && r > cap / base) return std::nullopt;
    r *= base;
  }
  if (r > cap) return std::nullopt;
  return r;
}

}  // namespace detail

// True iff no complete integral allocation Pareto-dominates X (weakly better
// for everyone, strictly better for someone).
inline bool brute_force_po_check(const Instance& inst, const Allocation& x,
                                 std::uint64_t cap = kEnumerationCap) {
  require_complete(inst, x, "brute_force_po_check");
  const std::size_t n = inst.agents();
  const std::size_t m = inst.items();
  if (!detail::bounded_pow(n, m, cap)) {
    throw CapExceeded("brute_force_po_check: n^m exceeds the enumeration cap of " +
                      std::to_string(cap));
  }
  std::vector<Value> base(n);
  for (std::size_t i = 0; i < n; ++i) base[i] = bundle_value(inst, i, x.bundle(i));

  std::vector<std::size_t> owner(m, 0);
  std::vector<Value> util(n);
  while (true) {
    std::fill(util.begin(), util.end(), 0);
    for (std::size_t g = 0; g < m; ++g) util[owner[g]] += inst.value(owner[g], g);
    bool weakly = true;
    bool strictly = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (util[i] < base[i]) weakly = false;
      if (util[i] > base[i]) strictly = true;
    }
    if (weakly && strictly) return false;

    std::size_t g = 0;
    while (g < m && ++owner[g] == n) owner[g++] = 0;
    if (g == m) break;
  }
  return true;
}

// Componentwise-minimal q in [0, cap]^n that eliminates envy and satisfies
// every constraint, or nullopt. cap < 0 means m * Delta.
inline std::optional<PaymentVector> brute_force_min_payments(
    const Instance& inst, const Allocation& x, std::span<const PaymentConstraint> constraints,
    Value cap = -1, std::uint64_t enum_cap = kEnumerationCap) {
  check_compatible(inst, x);
  if (cap < 0) cap = payment_cap(inst);
  const std::size_t n = inst.agents();
  if (!detail::bounded_pow(static_cast<std::uint64_t>(cap) + 1, n, enum_cap)) {
    throw CapExceeded("brute_force_min_payments: (cap+1)^n exceeds the enumeration cap of " +
                      std::to_string(enum_cap));
  }

  std::vector<std::vector<Value>> v(n, std::vector<Value>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) v[i][j] = bundle_value(inst, i, x.bundle(j));
  }

  auto feasible = [&](const PaymentVector& q) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (v[i][i] + q[i] < v[i][j] + q[j]) return false;
      }
    }
    return satisfies_all(constraints, q);
  };
  auto for_each_vector = [&](auto&& fn) {
    PaymentVector q(n, 0);
    while (true) {
      fn(q);
      std::size_t k = 0;
      while (k < n && ++q[k] > cap) q[k++] = 0;
      if (k == n) break;
    }
  };

  std::optional<PaymentVector> best;
  for_each_vector([&](const PaymentVector& q) {
    if (!feasible(q)) return;
    if (!best) {
      best = q;
    } else {
      for (std::size_t i = 0; i < n; ++i) (*best)[i] = std::min((*best)[i], q[i]);
    }
  });
  if (!best) return std::nullopt;

  // The feasible set is closed under componentwise min, so the pointwise
  // minimum must itself be feasible.
  if (!feasible(*best)) {
    throw std::logic_error("brute_force_min_payments: componentwise minimum is infeasible");
  }
  return best;
}

}  // namespace fairpar
