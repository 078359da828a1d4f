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

// JSON file formats. Every agent and item index in a file is 1-based.
//
//   instance     {"n": 3, "m": 3, "class": "additive", "values": [[1,3,2],[0,1,0],[2,0,2]]}
//   allocation   [[3], [2], [1]]                    one item list per agent
//   payments     [1, 0, 1]
//   constraints  [{"i": 1, "x": 0, "j": 2, "y": 0}]  (i paid > x) => (j paid > y)
//   order        [2, 1, 3]                          sigma, first picker first
//   graph        {"left": 2, "right": 2, "edges": [[1,1],[1,2],[2,1]], "degree_bound": 3}

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fairpar/allocate.hpp"
#include "fairpar/hardness.hpp"
#include "fairpar/model.hpp"
#include "fairpar/payments.hpp"

namespace fairpar::io {

using Json = nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write file '" + path + "'");
  out << text;
}

// Parses JSON text, turning syntax errors into "what: line L, column C: ...".
inline Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InvalidInput(std::string(what) + ": line " + std::to_string(line) + ", column " +
                       std::to_string(col) + ": invalid JSON");
  }
}

namespace detail {

inline const Json& field(const Json& obj, const char* key, std::string_view what) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InvalidInput(std::string(what) + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

inline std::int64_t integer(const Json& v, std::string_view what) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == static_cast<double>(static_cast<std::int64_t>(d))) return static_cast<std::int64_t>(d);
  }
  throw InvalidInput(std::string(what) + ": expected an integer, got " + v.dump());
}

// 1-based index in [1, count] -> 0-based.
inline std::size_t index(const Json& v, std::size_t count, std::string_view what) {
  const auto k = integer(v, what);
  if (k < 1 || static_cast<std::uint64_t>(k) > count) {
    throw InvalidInput(std::string(what) + ": index " + std::to_string(k) + " outside 1.." +
                       std::to_string(count));
  }
  return static_cast<std::size_t>(k - 1);
}

inline const Json& array(const Json& v, std::string_view what) {
  if (!v.is_array()) throw InvalidInput(std::string(what) + ": expected a JSON array");
  return v;
}

}  // namespace detail

// ---- instance ----

inline RawInstance raw_instance_from_json(const Json& j) {
  constexpr std::string_view what = "instance";
  RawInstance raw;
  raw.n = detail::integer(detail::field(j, "n", what), "instance.n");
  raw.m = detail::integer(detail::field(j, "m", what), "instance.m");
  const auto& cls = detail::field(j, "class", what);
  if (!cls.is_string()) throw InvalidInput("instance.class: expected a string");
  raw.valuation_class = cls.get<std::string>();
  for (const auto& row : detail::array(detail::field(j, "values", what), "instance.values")) {
    auto& out = raw.values.emplace_back();
    for (const auto& v : detail::array(row, "instance.values row")) {
      if (v.is_number_integer()) {
        out.emplace_back(v.get<std::int64_t>());
      } else if (v.is_number_float()) {
        out.emplace_back(v.get<double>());
      } else {
        throw InvalidInput("instance.values: expected numbers, got " + v.dump());
      }
    }
  }
  return raw;
}

inline Instance instance_from_json(const Json& j) { return validate_instance(raw_instance_from_json(j)); }

inline Json to_json(const Instance& inst) {
  return Json{{"n", inst.agents()},
              {"m", inst.items()},
              {"class", std::string(to_string(inst.valuation_class()))},
              {"values", inst.rows()}};
}

inline Instance parse_instance(std::string_view text) {
  return instance_from_json(parse_json(text, "instance"));
}

// ---- allocation ----

inline Allocation allocation_from_json(const Json& j, const Instance& inst) {
  const auto& arr = detail::array(j, "allocation");
  if (arr.size() != inst.agents()) {
    throw InvalidInput("allocation: " + std::to_string(arr.size()) + " bundles, instance has " +
                       std::to_string(inst.agents()) + " agents");
  }
  std::vector<std::vector<std::size_t>> bundles;
  for (const auto& b : arr) {
    auto& out = bundles.emplace_back();
    for (const auto& g : detail::array(b, "allocation bundle")) {
      out.push_back(detail::index(g, inst.items(), "allocation item"));
    }
  }
  return Allocation::from_bundles(inst.items(), std::move(bundles));
}

inline Json to_json(const Allocation& x) {
  Json arr = Json::array();
  for (const auto& b : x.bundles()) {
    Json items = Json::array();
    for (std::size_t g : b) items.push_back(g + 1);
    arr.push_back(std::move(items));
  }
  return arr;
}

// ---- payments and constraints ----

inline PaymentVector payments_from_json(const Json& j, std::size_t agents) {
  const auto& arr = detail::array(j, "payments");
  if (arr.size() != agents) throw InvalidInput("payments: expected " + std::to_string(agents) + " entries");
  PaymentVector q;
  for (const auto& v : arr) {
    const auto x = detail::integer(v, "payments");
    if (x < 0) throw InvalidInput("payments: negative payment");
    q.push_back(x);
  }
  return q;
}

inline Json payments_to_json(const PaymentVector& q) { return Json(q); }

inline std::vector<PaymentConstraint> constraints_from_json(const Json& j, const Instance& inst) {
  std::vector<PaymentConstraint> out;
  for (const auto& c : detail::array(j, "constraints")) {
    constexpr std::string_view what = "constraint";
    out.push_back({detail::index(detail::field(c, "i", what), inst.agents(), "constraint.i"),
                   detail::integer(detail::field(c, "x", what), "constraint.x"),
                   detail::index(detail::field(c, "j", what), inst.agents(), "constraint.j"),
                   detail::integer(detail::field(c, "y", what), "constraint.y")});
  }
  check_constraints(inst, out);
  return out;
}

inline Json constraints_to_json(const std::vector<PaymentConstraint>& cs) {
  Json arr = Json::array();
  for (const auto& c : cs) arr.push_back({{"i", c.i + 1}, {"x", c.x}, {"j", c.j + 1}, {"y", c.y}});
  return arr;
}

// ---- order ----

inline AgentOrder order_from_json(const Json& j, std::size_t agents) {
  const auto& arr = detail::array(j, "order");
  if (arr.size() != agents) throw InvalidInput("order: expected " + std::to_string(agents) + " agents");
  std::vector<std::size_t> sigma;
  for (const auto& a : arr) sigma.push_back(detail::index(a, agents, "order"));
  return AgentOrder::create(std::move(sigma));
}

inline Json to_json(const AgentOrder& o) {
  Json arr = Json::array();
  for (std::size_t a : o.sigma()) arr.push_back(a + 1);
  return arr;
}

// ---- bipartite graph ----

inline BipartiteGraph graph_from_json(const Json& j) {
  constexpr std::string_view what = "graph";
  const auto left = detail::integer(detail::field(j, "left", what), "graph.left");
  const auto right = detail::integer(detail::field(j, "right", what), "graph.right");
  if (left < 0 || right < 0) throw InvalidInput("graph: vertex counts must be nonnegative");
  std::vector<BipartiteGraph::Edge> edges;
  for (const auto& e : detail::array(detail::field(j, "edges", what), "graph.edges")) {
    if (!e.is_array() || e.size() != 2) throw InvalidInput("graph.edges: expected [x, y] pairs");
    edges.emplace_back(detail::index(e[0], static_cast<std::size_t>(left), "graph edge x"),
                       detail::index(e[1], static_cast<std::size_t>(right), "graph edge y"));
  }
  std::optional<std::size_t> bound;
  if (j.contains("degree_bound") && !j.at("degree_bound").is_null()) {
    bound = static_cast<std::size_t>(detail::integer(j.at("degree_bound"), "graph.degree_bound"));
  }
  return BipartiteGraph::create(static_cast<std::size_t>(left), static_cast<std::size_t>(right),
                                std::move(edges), bound);
}

inline Json to_json(const BipartiteGraph& g) {
  Json edges = Json::array();
  for (const auto& [x, y] : g.edges()) edges.push_back({x + 1, y + 1});
  Json j{{"left", g.left()}, {"right", g.right()}, {"edges", std::move(edges)}};
  if (g.degree_bound()) j["degree_bound"] = *g.degree_bound();
  return j;
}

}  // namespace fairpar::io
