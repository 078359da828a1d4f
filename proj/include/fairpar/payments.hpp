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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fairpar/model.hpp"

namespace fairpar {

// Nonnegative integer payments, one per agent.
using PaymentVector = std::vector<Value>;

// "If agent i is paid more than x, agent j must be paid more than y."
struct PaymentConstraint {
  std::size_t i = 0;
  Value x = 0;
  std::size_t j = 0;
  Value y = 0;

  bool satisfied_by(std::span<const Value> q) const { return !(q[i] > x) || q[j] > y; }
  friend bool operator==(const PaymentConstraint&, const PaymentConstraint&) = default;
};

// Payments never need to exceed m * Delta: that is the most any agent can
// value the whole item set.
inline Value payment_cap(const Instance& inst) {
  return static_cast<Value>(inst.items()) * inst.max_value();
}

inline void check_constraints(const Instance& inst, std::span<const PaymentConstraint> cs) {
  const Value cap = payment_cap(inst);
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const auto& c = cs[k];
    const std::string where = "constraint " + std::to_string(k + 1) + ": ";
    if (c.i >= inst.agents() || c.j >= inst.agents()) {
      throw InvalidInput(where + "agent index out of range 1.." + std::to_string(inst.agents()));
    }
    if (c.x < 0 || c.x > cap || c.y < 0 || c.y > cap) {
      throw InvalidInput(where + "dollar amounts must lie in [0, " + std::to_string(cap) +
                         "] (m * max value)");
    }
  }
}

// v_i(X_i) + q_i >= v_i(X_j) + q_j for every pair.
inline bool envy_free_with_payments(const Instance& inst, const Allocation& x,
                                    std::span<const Value> q) {
  const std::size_t n = inst.agents();
  for (std::size_t i = 0; i < n; ++i) {
    const Value own = bundle_value(inst, i, x.bundle(i)) + q[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (own < bundle_value(inst, i, x.bundle(j)) + q[j]) return false;
    }
  }
  return true;
}

inline bool satisfies_all(std::span<const PaymentConstraint> cs, std::span<const Value> q) {
  for (const auto& c : cs) {
    if (!c.satisfied_by(q)) return false;
  }
  return true;
}

}  // namespace fairpar
