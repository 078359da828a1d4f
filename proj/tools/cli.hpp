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


// Command-line front end. run() takes the arguments after the program name
// and writes only to the given streams, so tests can drive it in-process.
//
// Exit codes: 0 success, 1 a negative outcome (property fails, no payment
// vector, mismatch), 2 bad input or usage.

#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairpar/fairpar.hpp"

namespace fairpar::cli {

inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kInputError = 2;

namespace detail {

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

// "-" reads standard input.
inline std::string slurp(const std::string& path, Streams& s) {
  if (path == "-") {
    std::ostringstream ss;
    ss << s.in.rdbuf();
    return ss.str();
  }
  return io::read_file(path);
}

inline io::Json load(const std::string& path, std::string_view what, Streams& s) {
  try {
    return io::parse_json(slurp(path, s), what);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

// Writes `text` plus a newline to `path`, or to stdout when path is empty.
inline void emit(const std::string& path, const std::string& text, Streams& s) {
  if (path.empty()) {
    s.out << text << '\n';
  } else {
    io::write_file(path, text + "\n");
  }
}

inline std::size_t env_size(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const unsigned long long k = std::strtoull(v, &end, 10);
  if (*end != '\0' || k == 0) {
    throw InvalidInput(std::string("environment variable ") + name + "='" + v +
                       "' is not a positive integer");
  }
  return static_cast<std::size_t>(k);
}

inline SubsidyOptions subsidy_options() {
  SubsidyOptions o;
  o.closure_vertex_cap = env_size("FAIRPAR_CLOSURE_CAP", o.closure_vertex_cap);
  o.grid_vertex_cap = env_size("FAIRPAR_GRID_CAP", o.grid_vertex_cap);
  return o;
}

inline std::string items_1based(const std::vector<std::size_t>& items) {
  std::string s = "{";
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(items[k] + 1);
  }
  return s + "}";
}

inline std::vector<std::size_t> parse_sizes(const std::string& list) {
  std::vector<std::size_t> out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
      throw InvalidInput("--sizes: expected a comma-separated list of positive integers, got '" +
                         list + "'");
    }
    const auto k = std::stoull(tok);
    if (k == 0) throw InvalidInput("--sizes: sizes must be positive");
    out.push_back(static_cast<std::size_t>(k));
  }
  if (out.empty()) throw InvalidInput("--sizes: empty list");
  return out;
}

// ---- verbs ----

struct VerifyArgs {
  std::string instance, allocation, property = "ef1";
};

inline int verify(const VerifyArgs& a, Streams& s) {
  const auto inst = io::instance_from_json(load(a.instance, "instance", s));
  const auto x = io::allocation_from_json(load(a.allocation, "allocation", s), inst);
  const Property p = a.property == "ef" ? Property::kEF
                     : a.property == "efx" ? Property::kEFX
                                           : Property::kEF1;
  const auto r = check(p, inst, x);
  if (r.holds) {
    s.out << "PASS\n";
    return kOk;
  }
  const auto& w = *r.witness;
  s.out << "FAIL " << to_string(p) << ": agent " << w.envier + 1 << " envies agent " << w.envied + 1;
  if (p == Property::kEF1) s.out << " even without any single item of " << items_1based(w.items);
  if (p == Property::kEFX) s.out << " even without item " << items_1based(w.items);
  s.out << '\n';
  return kNegative;
}

struct AllocateArgs {
  std::string instance, method = "rr", order, alpha, output;
};

inline int allocate(const AllocateArgs& a, Streams& s) {
  const auto inst = io::instance_from_json(load(a.instance, "instance", s));
  const auto order = a.order.empty() ? AgentOrder::identity(inst.agents())
                                     : io::order_from_json(load(a.order, "order", s), inst.agents());
  if (!a.alpha.empty() && a.method != "matching") {
    throw InvalidInput("--alpha applies only to --method matching");
  }
  std::optional<Allocation> x;
  if (a.method == "rr") {
    x = round_robin(inst, order);
  } else if (a.method == "two-agent") {
    x = ef1_fpo_two_agents(inst);
  } else if (a.method == "identical") {
    x = ef1_identical(inst, order);
  } else if (a.method == "welfare-max") {
    x = welfare_max_allocation(inst);
  } else if (a.alpha.empty()) {
    x = ef1_po_restricted(inst);
  } else {
    x = ef1_po_restricted(alpha_round(inst, parse_ratio(a.alpha)).instance);
  }
  emit(a.output, io::to_json(*x).dump(), s);
  return kOk;
}

struct SubsidizeArgs {
  std::string instance, allocation, constraints, output;
};

inline int subsidize(const SubsidizeArgs& a, Streams& s) {
  const auto inst = io::instance_from_json(load(a.instance, "instance", s));
  const auto x = io::allocation_from_json(load(a.allocation, "allocation", s), inst);
  std::vector<PaymentConstraint> cs;
  if (!a.constraints.empty()) cs = io::constraints_from_json(load(a.constraints, "constraints", s), inst);
  const auto q = constrained_payments(inst, x, cs, subsidy_options());
  if (!q) {
    s.out << "NO_SATISFYING_VECTOR\n";
    return kNegative;
  }
  emit(a.output, io::payments_to_json(*q).dump(), s);
  return kOk;
}

struct GraphArgs {
  std::string graph, instance_out, order_out;
};

inline int reduce_lfmm(const GraphArgs& a, Streams& s) {
  const auto g = io::graph_from_json(load(a.graph, "graph", s));
  const auto red = reduce_lfmm_to_rr(g);
  for (const auto& w : red.warnings) s.err << "warning: " << w << '\n';
  if (a.instance_out.empty() && a.order_out.empty()) {
    s.out << io::Json{{"instance", io::to_json(red.instance)}, {"order", io::to_json(red.order)}}.dump()
          << '\n';
    return kOk;
  }
  emit(a.instance_out, io::to_json(red.instance).dump(), s);
  emit(a.order_out, io::to_json(red.order).dump(), s);
  return kOk;
}

inline int check_lfmm(const GraphArgs& a, Streams& s) {
  const auto g = io::graph_from_json(load(a.graph, "graph", s));
  for (const auto& w : reduce_lfmm_to_rr(g).warnings) s.err << "warning: " << w << '\n';
  if (check_equivalence(g)) {
    s.out << "EQUIVALENT\n";
    return kOk;
  }
  s.out << "MISMATCH\n";
  return kNegative;
}

struct GenArgs {
  std::string kind = "instance", cls = "additive", output;
  std::size_t n = 3, m = 5, t = 2, left = 4, right = 4, bound = 3;
  Value min_value = 1, max_value = 10;
  double density = 1.0;
  std::uint64_t seed = 1;
};

inline int gen(const GenArgs& a, Streams& s) {
  io::Json j;
  if (a.kind == "graph") {
    j = io::to_json(random_bipartite(a.left, a.right, a.bound, a.density, a.seed));
  } else if (a.kind == "allocation") {
    if (a.n == 0) throw InvalidInput("gen: n must be positive");
    Rng rng(a.seed);
    j = io::to_json(random_allocation(a.n, a.m, rng));
  } else {
    const auto cls = parse_valuation_class(a.cls);
    if (!cls) throw InvalidInput("gen: unknown class '" + a.cls + "'");
    InstanceParams p{a.n, a.m, *cls, a.min_value, a.max_value, a.density, a.t};
    j = io::to_json(random_instance(p, a.seed));
  }
  emit(a.output, j.dump(), s);
  return kOk;
}

struct BenchArgs {
  std::string primitive = "reduce", sizes = "16,64,256,1024";
  std::uint64_t seed = 1;
};

inline int bench(const BenchArgs& a, Streams& s) {
  const auto sizes = parse_sizes(a.sizes);
  s.out << "primitive,size,depth,work,peak_width,wall_ms\n";
  for (std::size_t size : sizes) {
    Rng rng(a.seed ^ size);
    pram::CostMeter cost;
    const auto start = std::chrono::steady_clock::now();
    if (a.primitive == "reduce") {
      std::vector<std::int64_t> v(size);
      for (auto& e : v) e = rng.uniform(0, 1000);
      cost = pram::par_reduce(std::span<const std::int64_t>(v), pram::ReduceOp::kSum).cost;
    } else if (a.primitive == "sort") {
      std::vector<std::int64_t> v(size);
      for (auto& e : v) e = rng.uniform(0, 1'000'000);
      cost = pram::bitonic_sort(std::span<const std::int64_t>(v)).cost;
    } else if (a.primitive == "apsp") {
      if (size > 1024) throw InvalidInput("bench apsp: size above 1024 is not supported");
      pram::DistanceMatrix d(size);
      for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) d.at(i, j) = i == j ? 0 : rng.uniform(1, 100);
      }
      cost = pram::apsp_minplus(d).cost;
    } else {
      if (size > 4096) throw InvalidInput("bench closure: size above 4096 is not supported");
      pram::BoolMatrix adj(size);
      const double p = 2.0 / static_cast<double>(size);
      for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) adj.at(i, j) = rng.bernoulli(p) ? 1 : 0;
      }
      cost = pram::transitive_closure(adj).cost;
    }
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    s.out << a.primitive << ',' << size << ',' << cost.depth << ',' << cost.work << ','
          << cost.peak_width << ',' << std::fixed << std::setprecision(3) << ms.count()
          << std::defaultfloat << '\n';
  }
  return kOk;
}

struct OracleArgs {
  std::string check = "payments", instance, allocation, constraints;
};

inline std::string payments_text(const std::optional<PaymentVector>& q) {
  return q ? io::payments_to_json(*q).dump() : "NO_SATISFYING_VECTOR";
}

inline int oracle(const OracleArgs& a, Streams& s) {
  const auto inst = io::instance_from_json(load(a.instance, "instance", s));
  const auto x = io::allocation_from_json(load(a.allocation, "allocation", s), inst);
  if (a.check == "po") {
    const bool po = brute_force_po_check(inst, x);
    s.out << (po ? "PO" : "NOT_PO") << '\n';
    return po ? kOk : kNegative;
  }
  std::vector<PaymentConstraint> cs;
  if (!a.constraints.empty()) cs = io::constraints_from_json(load(a.constraints, "constraints", s), inst);
  const auto slow = brute_force_min_payments(inst, x, cs);
  const auto fast = constrained_payments(inst, x, cs, subsidy_options());
  s.out << "oracle " << payments_text(slow) << '\n' << "fast   " << payments_text(fast) << '\n';
  if (slow == fast) {
    s.out << "AGREE\n";
    return kOk;
  }
  s.out << "DISAGREE\n";
  return kNegative;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  detail::Streams s{in, out, err};
  CLI::App app("Fair division of indivisible goods with instrumented parallel primitives", "fairpar");
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Fork-join worker count")->check(CLI::PositiveNumber);

  auto file = [](CLI::App* cmd, const char* name, std::string& dst, const char* help) {
    return cmd->add_option(name, dst, help);
  };

  detail::VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check EF, EF1 or EFX of an allocation");
  file(verify, "--instance", va.instance, "Instance file")->required();
  file(verify, "--allocation", va.allocation, "Allocation file")->required();
  verify->add_option("--property", va.property, "ef | ef1 | efx")
      ->check(CLI::IsMember({"ef", "ef1", "efx"}));

  detail::AllocateArgs aa;
  auto* allocate = app.add_subcommand("allocate", "Compute an allocation");
  file(allocate, "--instance", aa.instance, "Instance file")->required();
  allocate->add_option("--method", aa.method, "rr | two-agent | identical | matching | welfare-max")
      ->check(CLI::IsMember({"rr", "two-agent", "identical", "matching", "welfare-max"}));
  file(allocate, "--order", aa.order, "Picking order file (rr, identical)");
  allocate->add_option("--alpha", aa.alpha, "Rounding factor P/Q in (0,1) for --method matching");
  file(allocate, "--output", aa.output, "Write the allocation here instead of stdout");

  detail::SubsidizeArgs sa;
  auto* subsidize = app.add_subcommand("subsidize", "Minimal payments that eliminate envy");
  file(subsidize, "--instance", sa.instance, "Instance file")->required();
  file(subsidize, "--allocation", sa.allocation, "Allocation file")->required();
  file(subsidize, "--constraints", sa.constraints, "Payment constraint file");
  file(subsidize, "--output", sa.output, "Write the payments here instead of stdout");

  detail::GraphArgs ga;
  auto* reduce = app.add_subcommand("reduce-lfmm", "Build the Round-Robin instance for a bipartite graph");
  file(reduce, "--graph", ga.graph, "Graph file")->required();
  file(reduce, "--instance-out", ga.instance_out, "Write the instance here");
  file(reduce, "--order-out", ga.order_out, "Write the order here");
  detail::GraphArgs ca;
  auto* check_lfmm = app.add_subcommand("check-lfmm", "Compare greedy matching with first-round picks");
  file(check_lfmm, "--graph", ca.graph, "Graph file")->required();

  detail::GenArgs gn;
  auto* gen = app.add_subcommand("gen", "Seeded random instance, allocation or graph");
  gen->add_option("--kind", gn.kind, "instance | allocation | graph")
      ->check(CLI::IsMember({"instance", "allocation", "graph"}));
  gen->add_option("--class", gn.cls, "additive | restricted-additive | binary | identical");
  gen->add_option("--n", gn.n, "Agents");
  gen->add_option("--m", gn.m, "Items");
  gen->add_option("--t", gn.t, "Distinct inherent values (restricted-additive)");
  gen->add_option("--min", gn.min_value, "Smallest nonzero value");
  gen->add_option("--max", gn.max_value, "Largest value");
  gen->add_option("--density", gn.density, "Probability an agent values an item / an edge exists");
  gen->add_option("--left", gn.left, "Left vertices (graph)");
  gen->add_option("--right", gn.right, "Right vertices (graph)");
  gen->add_option("--bound", gn.bound, "Degree bound (graph)");
  gen->add_option("--seed", gn.seed, "Seed");
  file(gen, "--output", gn.output, "Write here instead of stdout");

  detail::BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Cost and wall time of a parallel primitive as CSV");
  bench->add_option("--primitive", ba.primitive, "reduce | sort | apsp | closure")
      ->check(CLI::IsMember({"reduce", "sort", "apsp", "closure"}));
  bench->add_option("--sizes", ba.sizes, "Comma-separated sizes");
  bench->add_option("--seed", ba.seed, "Seed");

  detail::OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "Brute-force counterparts for cross-checking");
  oracle->add_option("--check", oa.check, "payments | po")->check(CLI::IsMember({"payments", "po"}));
  file(oracle, "--instance", oa.instance, "Instance file")->required();
  file(oracle, "--allocation", oa.allocation, "Allocation file")->required();
  file(oracle, "--constraints", oa.constraints, "Payment constraint file (payments)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n\n" << app.help();
    return kInputError;
  }

  try {
    if (threads > 0) pram::set_workers(threads);
    if (verify->parsed()) return detail::verify(va, s);
    if (allocate->parsed()) return detail::allocate(aa, s);
    if (subsidize->parsed()) return detail::subsidize(sa, s);
    if (reduce->parsed()) return detail::reduce_lfmm(ga, s);
    if (check_lfmm->parsed()) return detail::check_lfmm(ca, s);
    if (gen->parsed()) return detail::gen(gn, s);
    if (bench->parsed()) return detail::bench(ba, s);
    return detail::oracle(oa, s);
  } catch (const NotEnvyFreeable& e) {
    err << "error: " << e.what() << '\n';
    return kNegative;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const io::Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace fairpar::cli
