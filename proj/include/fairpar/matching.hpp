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

// EF1 + PO for restricted additive valuations through a maximum-weight
// perfect matching between items and agent copies.
//
// Items are grouped into buckets M_1..M_t by decreasing inherent value and
// padded with m(n-1) dummy items. Agent i has m copies b(i, c), c = 1..m,
// and copy bucket N_c holds one copy of every agent. An item j in M_f is
// joined to every copy of every agent valuing it with weight -m^(t-f) * c;
// dummies are joined to every copy with weight 0. In any maximum-weight
// perfect matching agent i values its copy-c item at least as much as
// agent j's copy-(c+1) item, which makes the allocation EF1, and every real
// item lands with an agent valuing it, which makes it PO.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fairpar/model.hpp"
#include "fairpar/pram/cost.hpp"
#include "fairpar/pram/scheduler.hpp"
#include "fairpar/pram/sort.hpp"

namespace fairpar {

using Weight = __int128;

inline std::string to_string(Weight w) {
  if (w == 0) return "0";
  const bool neg = w < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(w) : static_cast<unsigned __int128>(w);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

namespace detail {

inline Weight checked_mul(Weight a, Weight b, const char* what) {
  Weight r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw Overflow(std::string(what) + ": exceeds 127-bit integer range");
  }
  return r;
}

}  // namespace detail

class BucketedGraph {
 public:
  // Item vertices [0, real_items()) are real items in bucket order, the rest
  // dummies. Copy vertex (c - 1) * n + i is b(i, c).
  std::size_t agents() const { return n_; }
  std::size_t real_items() const { return item_ids_.size(); }
  std::size_t dummy_items() const { return side() - real_items(); }
  std::size_t side() const { return n_ * item_ids_.size(); }
  std::size_t buckets() const { return bucket_values_.size(); }

  // Original index of a real item vertex.
  std::size_t item_id(std::size_t a) const { return item_ids_[a]; }
  // 1-based bucket f of a real item vertex.
  std::size_t bucket_of(std::size_t a) const { return bucket_[a]; }
  Value bucket_value(std::size_t f) const { return bucket_values_[f - 1]; }
  const std::vector<std::size_t>& discarded() const { return discarded_; }

  std::size_t copy_vertex(std::size_t agent, std::size_t c) const { return (c - 1) * n_ + agent; }
  std::size_t copy_agent(std::size_t b) const { return b % n_; }
  std::size_t copy_index(std::size_t b) const { return b / n_ + 1; }

  bool is_dummy(std::size_t a) const { return a >= real_items(); }

  bool has_edge(std::size_t a, std::size_t b) const {
    return is_dummy(a) || valued_[a * n_ + copy_agent(b)] != 0;
  }

  // -m^(t-f) * c for real items, 0 for dummies. Only meaningful on edges.
  Weight weight(std::size_t a, std::size_t b) const {
    if (is_dummy(a)) return 0;
    return -bucket_scale_[bucket_[a] - 1] * static_cast<Weight>(copy_index(b));
  }

  std::size_t degree_of_item(std::size_t a) const {
    std::size_t d = 0;
    for (std::size_t b = 0; b < side(); ++b) d += has_edge(a, b) ? 1 : 0;
    return d;
  }

  // Largest |weight|: m^(t-1) * m.
  Weight max_abs_weight() const {
    if (item_ids_.empty()) return 0;
    return bucket_scale_.front() * static_cast<Weight>(item_ids_.size());
  }

  const pram::CostMeter& cost() const { return cost_; }

 private:
  friend BucketedGraph build_bucketed_graph(const Instance& inst);

  std::size_t n_ = 0;
  std::vector<std::size_t> item_ids_;
  std::vector<std::size_t> bucket_;
  std::vector<Value> bucket_values_;
  std::vector<Weight> bucket_scale_;  // m^(t-f) for f = 1..t
  std::vector<std::uint8_t> valued_;  // real item vertex x agent
  std::vector<std::size_t> discarded_;
  pram::CostMeter cost_;
};

inline BucketedGraph build_bucketed_graph(const Instance& inst) {
  // Binary valuations are restricted additive with every v(j) = 1.
  if (inst.valuation_class() != ValuationClass::kRestrictedAdditive &&
      inst.valuation_class() != ValuationClass::kBinary) {
    throw InvalidInput("matching: instance class is " +
                       std::string(to_string(inst.valuation_class())) +
                       ", expected restricted-additive or binary");
  }
  const std::size_t n = inst.agents();
  BucketedGraph g;
  g.n_ = n;

  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < inst.items(); ++j) {
    (inst.valued_by_someone(j) ? kept : g.discarded_).push_back(j);
  }
  std::vector<Value> inherent(kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k) inherent[k] = inst.inherent_value(kept[k]);

  auto sorted = pram::bitonic_sort_indices(
      kept.size(), [&](std::size_t a, std::size_t b) { return inherent[a] > inherent[b]; });
  g.cost_ = sorted.cost;

  for (std::size_t pos = 0; pos < kept.size(); ++pos) {
    const std::size_t k = sorted.keys[pos];
    g.item_ids_.push_back(kept[k]);
    if (g.bucket_values_.empty() || g.bucket_values_.back() != inherent[k]) {
      g.bucket_values_.push_back(inherent[k]);
    }
    g.bucket_.push_back(g.bucket_values_.size());
  }

  const std::size_t m = kept.size();
  const std::size_t t = g.bucket_values_.size();
  g.bucket_scale_.assign(t, 1);
  for (std::size_t f = t; f-- > 0;) {
    if (f + 1 < t) {
      g.bucket_scale_[f] = detail::checked_mul(g.bucket_scale_[f + 1], static_cast<Weight>(m),
                                               "matching weight m^(t-f)");
    }
  }
  if (t > 0) {
    detail::checked_mul(g.bucket_scale_.front(), static_cast<Weight>(m) * static_cast<Weight>(m),
                        "matching weight m^t * m");
  }

  g.valued_.assign(m * n, 0);
  pram::parallel_for(m * n, [&](std::size_t cell) {
    g.valued_[cell] = inst.value(cell % n, g.item_ids_[cell / n]) > 0 ? 1 : 0;
  });
  const auto side = static_cast<std::uint64_t>(g.side());
  g.cost_.step(side * side);
  return g;
}

// Bijection between item vertices and copy vertices.
struct PerfectMatching {
  std::vector<std::size_t> copy_of_item;
  std::vector<std::size_t> item_of_copy;
  Weight total = 0;
};

// Exact maximum-weight perfect matching: Hungarian algorithm with
// potentials on costs -w, restricted to existing edges. O(side^3).
inline PerfectMatching max_weight_perfect_matching(const BucketedGraph& g) {
  const std::size_t size = g.side();
  PerfectMatching out;
  out.copy_of_item.assign(size, 0);
  out.item_of_copy.assign(size, 0);
  if (size == 0) return out;

  // Potentials stay within a few multiples of (size + 1) * max cost.
  const Weight max_cost = g.max_abs_weight();
  detail::checked_mul(detail::checked_mul(max_cost + 1, static_cast<Weight>(size) + 1,
                                          "matching potentials"),
                      8, "matching potentials");
  const Weight kInf = std::numeric_limits<Weight>::max() / 4;

  std::vector<Weight> u(size + 1, 0), v(size + 1, 0), minv(size + 1);
  std::vector<std::size_t> p(size + 1, 0), way(size + 1, 0);
  std::vector<bool> used(size + 1);
  for (std::size_t i = 1; i <= size; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      Weight delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= size; ++j) {
        if (used[j]) continue;
        if (g.has_edge(i0 - 1, j - 1)) {
          const Weight cur = -g.weight(i0 - 1, j - 1) - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 == 0) {
        throw std::logic_error("matching: graph has no perfect matching (Hall condition broken)");
      }
      for (std::size_t j = 0; j <= size; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else if (minv[j] != kInf) {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= size; ++j) {
    const std::size_t a = p[j] - 1;
    out.copy_of_item[a] = j - 1;
    out.item_of_copy[j - 1] = a;
    out.total += g.weight(a, j - 1);
  }
  return out;
}

// Original item matched to b(agent, c), or nullopt for a dummy.
inline std::optional<std::size_t> item_at_copy(const BucketedGraph& g, const PerfectMatching& mt,
                                               std::size_t agent, std::size_t c) {
  const std::size_t a = mt.item_of_copy[g.copy_vertex(agent, c)];
  if (g.is_dummy(a)) return std::nullopt;
  return g.item_id(a);
}

struct RestrictedResult {
  Allocation allocation;
  BucketedGraph graph;
  PerfectMatching matching;
};

inline RestrictedResult ef1_po_restricted_detail(const Instance& inst) {
  auto graph = build_bucketed_graph(inst);
  auto matching = max_weight_perfect_matching(graph);
  std::vector<std::size_t> owner(inst.items(), kUnassigned);
  for (std::size_t a = 0; a < graph.real_items(); ++a) {
    owner[graph.item_id(a)] = graph.copy_agent(matching.copy_of_item[a]);
  }
  auto allocation = Allocation::from_owners(inst.agents(), owner);
  return {std::move(allocation), std::move(graph), std::move(matching)};
}

// EF1 and PO allocation for restricted additive valuations. Items no agent
// values are left unallocated.
inline Allocation ef1_po_restricted(const Instance& inst) {
  return ef1_po_restricted_detail(inst).allocation;
}

// Exact rational p/q.
struct Ratio {
  std::int64_t num = 1;
  std::int64_t den = 2;
};

// Accepts "P/Q" or a finite decimal such as "0.75".
inline Ratio parse_ratio(std::string_view s) {
  auto digits = [](std::string_view d) {
    return !d.empty() && std::all_of(d.begin(), d.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  auto to_i64 = [](std::string_view d) {
    if (d.size() > 17) throw InvalidInput("alpha: too many digits");
    return static_cast<std::int64_t>(std::stoll(std::string(d)));
  };
  Ratio r;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto a = s.substr(0, slash), b = s.substr(slash + 1);
    if (!digits(a) || !digits(b)) throw InvalidInput("alpha: expected P/Q, got '" + std::string(s) + "'");
    r = {to_i64(a), to_i64(b)};
  } else if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto a = s.substr(0, dot), b = s.substr(dot + 1);
    if (!digits(a) || !digits(b)) throw InvalidInput("alpha: not a rational number: '" + std::string(s) + "'");
    std::int64_t den = 1;
    for (std::size_t k = 0; k < b.size(); ++k) den *= 10;
    r = {to_i64(a) * den + to_i64(b), den};
  } else {
    throw InvalidInput("alpha: expected P/Q or a decimal in (0,1), got '" + std::string(s) + "'");
  }
  if (r.den <= 0 || r.num <= 0 || r.num >= r.den) {
    throw InvalidInput("alpha must lie strictly between 0 and 1");
  }
  return r;
}

struct RoundedInstance {
  // Rounded value of an entry is instance.value(i, j) / scale.
  Instance instance;
  Value scale = 1;
  // ceil(log_{1/alpha}(V + 1)), the number of rounding intervals.
  std::size_t interval_bound = 0;
};

// Rounds every nonzero value v down to the largest (1/alpha)^k <= v. The
// powers are kept exact by scaling all values by p^K (alpha = p/q, K the
// largest exponent used), which leaves every fairness comparison unchanged.
inline RoundedInstance alpha_round(const Instance& inst, Ratio alpha) {
  if (alpha.num <= 0 || alpha.den <= 0 || alpha.num >= alpha.den) {
    throw InvalidInput("alpha must lie strictly between 0 and 1");
  }
  const Weight p = alpha.num, q = alpha.den;
  auto exponent = [&](Value v) {
    // largest k with q^k <= v * p^k
    std::size_t k = 0;
    Weight qk = 1, vpk = v;
    while (true) {
      const Weight qn = detail::checked_mul(qk, q, "alpha rounding");
      const Weight vn = detail::checked_mul(vpk, p, "alpha rounding");
      if (qn > vn) return k;
      qk = qn;
      vpk = vn;
      ++k;
    }
  };

  const std::size_t n = inst.agents(), m = inst.items();
  std::vector<std::size_t> expo(n * m, 0);
  std::size_t top = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Value v = inst.value(i, j);
      if (v == 0) continue;
      expo[i * m + j] = exponent(v);
      top = std::max(top, expo[i * m + j]);
    }
  }
  auto power = [](Weight b, std::size_t e) {
    Weight r = 1;
    for (std::size_t k = 0; k < e; ++k) r = detail::checked_mul(r, b, "alpha rounding");
    return r;
  };
  std::vector<std::vector<Value>> rows(n, std::vector<Value>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (inst.value(i, j) == 0) continue;
      const std::size_t k = expo[i * m + j];
      const Weight stored = detail::checked_mul(power(q, k), power(p, top - k), "alpha rounding");
      if (stored > kMaxValue) throw Overflow("alpha rounding: scaled value exceeds 10^12");
      rows[i][j] = static_cast<Value>(stored);
    }
  }
  const Weight scale = power(p, top);
  if (scale > kMaxValue) throw Overflow("alpha rounding: scale exceeds 10^12");

  // smallest c with q^c >= (V + 1) p^c
  const Weight big_v = inst.max_value();
  std::size_t bound = 0;
  for (Weight qc = 1, pc = 1; qc < (big_v + 1) * pc; ++bound) {
    qc = detail::checked_mul(qc, q, "alpha rounding");
    pc = detail::checked_mul(pc, p, "alpha rounding");
  }
  return {Instance::create(n, m, std::move(rows), inst.valuation_class()),
          static_cast<Value>(scale), bound};
}

// For every pair: X_j empty, or some g in X_j with v_i(X_i) >= alpha * v_i(X_j \ g).
inline bool alpha_ef1_holds(const Instance& inst, const Allocation& x, Ratio alpha) {
  const std::size_t n = inst.agents();
  for (std::size_t i = 0; i < n; ++i) {
    const Weight own = bundle_value(inst, i, x.bundle(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || x.bundle(j).empty()) continue;
      const Weight theirs = bundle_value(inst, i, x.bundle(j));
      bool ok = false;
      for (std::size_t g : x.bundle(j)) {
        ok = ok || alpha.den * own >= alpha.num * (theirs - inst.value(i, g));
      }
      if (!ok) return false;
    }
  }
  return true;
}

}  // namespace fairpar
