// Copyright 2026 The flowjam Authors.
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


#include "flowjam/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "flowjam/errors.hpp"

namespace flowjam {
namespace {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Reachability over an acyclic raw graph, by a reverse topological sweep.
std::vector<std::vector<bool>> reachability(const DirectedGraph& g,
                                            const std::vector<std::vector<int>>& out) {
  const auto n = static_cast<std::size_t>(g.node_count);
  const std::vector<NodeId> order = topological_order(g.node_count, g.edges);
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto& row = reach[static_cast<std::size_t>(*it)];
    row[static_cast<std::size_t>(*it)] = true;
    for (int e : out[static_cast<std::size_t>(*it)]) {
      const auto& succ = reach[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(e)].head)];
      for (std::size_t w = 0; w < n; ++w) {
        if (succ[w]) row[w] = true;
      }
    }
  }
  return reach;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  // Keep a marker that this is a floating value.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void dump_into(const json& v, std::string& out) {
  switch (v.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_into(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ',';
        dump_into(v[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float:
      out += format_double(v.get<double>());
      break;
    default:
      out += v.dump();
  }
}

[[noreturn]] void schema(const std::string& pointer, const std::string& what) {
  throw SchemaError(pointer, what);
}

const json& require(const json& obj, const std::string& key, const std::string& base) {
  if (!obj.is_object()) schema(base.empty() ? "/" : base, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema(base + "/" + key, "missing field");
  return *it;
}

double number_at(const json& v, const std::string& pointer) {
  if (!v.is_number()) schema(pointer, "expected a number");
  return v.get<double>();
}

long long integer_at(const json& v, const std::string& pointer) {
  if (!v.is_number_integer()) schema(pointer, "expected an integer");
  return v.get<long long>();
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return splitmix64(seed ^ splitmix64(h));
}

EdgeList load_edgelist(std::istream& in) {
  EdgeList result;
  std::unordered_map<long long, NodeId> dense;
  std::set<std::pair<NodeId, NodeId>> seen;
  auto intern = [&](long long id) {
    auto [it, inserted] = dense.emplace(id, static_cast<NodeId>(result.original_ids.size()));
    if (inserted) result.original_ids.push_back(id);
    return it->second;
  };
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string a;
    std::string b;
    std::string extra;
    fields >> a >> b;
    if (a.empty() || b.empty()) throw ParseError(number, "expected two node ids");
    if (fields >> extra) throw ParseError(number, "unexpected trailing field '" + extra + "'");
    auto parse_id = [&](const std::string& s) {
      std::size_t used = 0;
      long long id = 0;
      try {
        id = std::stoll(s, &used);
      } catch (const std::exception&) {
        throw ParseError(number, "node id '" + s + "' is not an integer");
      }
      if (used != s.size()) throw ParseError(number, "node id '" + s + "' is not an integer");
      return id;
    };
    const long long ta = parse_id(a);
    const long long tb = parse_id(b);
    const NodeId tail = intern(ta);
    const NodeId head = intern(tb);
    if (!seen.emplace(tail, head).second) {
      ++result.duplicates;
      continue;
    }
    result.graph.edges.push_back({tail, head});
  }
  result.graph.node_count = static_cast<int>(result.original_ids.size());
  return result;
}

DirectedGraph random_dag(int nodes, int out_degree, int window, std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, "random_dag"));
  DirectedGraph g;
  g.node_count = nodes;
  for (int v = 0; v < nodes; ++v) {
    std::vector<int> pool;
    for (int w = v + 1; w <= std::min(nodes - 1, v + window); ++w) pool.push_back(w);
    std::shuffle(pool.begin(), pool.end(), rng);
    if (static_cast<int>(pool.size()) > out_degree) pool.resize(static_cast<std::size_t>(out_degree));
    std::sort(pool.begin(), pool.end());
    for (int w : pool) g.edges.push_back({v, w});
  }
  return g;
}

Scenario generate_scenario(const DirectedGraph& graph, const GenerateOptions& options) {
  if (options.k < 0 || options.xi < 1) {
    throw Error(ErrorKind::kInvalidInput, "k must be >= 0 and xi >= 1");
  }
  const auto n = static_cast<std::size_t>(graph.node_count);
  std::vector<std::vector<int>> out(n);
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    out[static_cast<std::size_t>(graph.edges[e].tail)].push_back(static_cast<int>(e));
  }
  for (auto& list : out) {
    std::sort(list.begin(), list.end(), [&](int x, int y) {
      return graph.edges[static_cast<std::size_t>(x)].head < graph.edges[static_cast<std::size_t>(y)].head;
    });
  }
  const auto reach = reachability(graph, out);

  std::mt19937_64 cap_rng(derive_seed(options.seed, "capacities"));
  std::normal_distribution<double> normal(20.0, 3.0);
  std::vector<double> capacities;
  capacities.reserve(graph.edges.size());
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    double c = normal(cap_rng);
    while (c < 1.0) c = normal(cap_rng);
    capacities.push_back(c);
  }
  const double budget =
      capacities.empty() ? 0.0 : *std::min_element(capacities.begin(), capacities.end());

  NodeId source = 0;
  NodeId sink = 0;
  if (options.source && options.sink) {
    source = *options.source;
    sink = *options.sink;
  } else {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    const std::vector<NodeId> order = topological_order(graph.node_count, graph.edges);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<double> ways;
      if (options.max_st_paths) {
        // Path counts from s, by DP over the topological order.
        ways.assign(n, 0.0);
        ways[s] = 1.0;
        for (NodeId v : order) {
          const double here = ways[static_cast<std::size_t>(v)];
          if (here == 0.0) continue;
          for (int e : out[static_cast<std::size_t>(v)]) {
            ways[static_cast<std::size_t>(graph.edges[static_cast<std::size_t>(e)].head)] += here;
          }
        }
      }
      for (std::size_t t = 0; t < n; ++t) {
        if (s == t || !reach[s][t]) continue;
        if (options.max_st_paths && ways[t] > *options.max_st_paths) continue;
        pairs.emplace_back(static_cast<NodeId>(s), static_cast<NodeId>(t));
      }
    }
    if (pairs.empty()) throw Error(ErrorKind::kGenerationFailed, "no connected node pair");
    std::mt19937_64 pair_rng(derive_seed(options.seed, "interdictor"));
    const auto pick = std::uniform_int_distribution<std::size_t>(0, pairs.size() - 1)(pair_rng);
    std::tie(source, sink) = pairs[pick];
  }
  Network net(graph.node_count, graph.edges, capacities, source, sink, budget);

  std::vector<NodeId> starts;
  for (std::size_t v = 0; v < n; ++v) {
    if (!out[v].empty()) starts.push_back(static_cast<NodeId>(v));
  }

  Scenario scenario{std::move(net), options.xi > 1 ? ScenarioMode::kRobust : ScenarioMode::kDeterministic,
                    {}, json::object()};
  for (int c = 0; c < options.xi; ++c) {
    std::mt19937_64 rng(derive_seed(options.seed, "paths/" + std::to_string(c)));
    UserPaths paths;
    std::set<int> used;
    std::set<std::vector<EdgeId>> chosen;
    int rejections = 0;
    while (static_cast<int>(paths.paths.size()) < options.k) {
      if (starts.empty()) throw Error(ErrorKind::kGenerationFailed, "graph has no edges");
      const NodeId a = starts[std::uniform_int_distribution<std::size_t>(0, starts.size() - 1)(rng)];
      std::vector<NodeId> targets;
      for (std::size_t t = 0; t < n; ++t) {
        if (static_cast<NodeId>(t) != a && reach[static_cast<std::size_t>(a)][t]) {
          targets.push_back(static_cast<NodeId>(t));
        }
      }
      const NodeId b = targets[std::uniform_int_distribution<std::size_t>(0, targets.size() - 1)(rng)];
      std::vector<EdgeId> path;
      for (NodeId v = a; v != b;) {
        std::vector<int> options_here;
        for (int e : out[static_cast<std::size_t>(v)]) {
          if (reach[static_cast<std::size_t>(graph.edges[static_cast<std::size_t>(e)].head)]
                   [static_cast<std::size_t>(b)]) {
            options_here.push_back(e);
          }
        }
        const int e = options_here[std::uniform_int_distribution<std::size_t>(0, options_here.size() - 1)(rng)];
        path.push_back(e);
        v = graph.edges[static_cast<std::size_t>(e)].head;
      }
      const bool clash = options.disjoint && std::any_of(path.begin(), path.end(),
                                                         [&](int e) { return used.contains(e); });
      if (clash || chosen.contains(path)) {
        if (++rejections > 10 * options.k) {
          throw Error(ErrorKind::kGenerationFailed,
                      "could not place " + std::to_string(options.k) + " user paths");
        }
        continue;
      }
      used.insert(path.begin(), path.end());
      chosen.insert(path);
      paths.paths.push_back(std::move(path));
    }

    std::mt19937_64 lam_rng(derive_seed(options.seed, "lambdas/" + std::to_string(c)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> load(graph.edges.size(), 0.0);
    for (const auto& p : paths.paths) {
      double bottleneck = std::numeric_limits<double>::infinity();
      for (EdgeId e : p) bottleneck = std::min(bottleneck, capacities[static_cast<std::size_t>(e)]);
      const double lam = bottleneck * (1.0 - unit(lam_rng));
      paths.initial.push_back(lam);
      for (EdgeId e : p) load[static_cast<std::size_t>(e)] += lam;
    }
    double factor = 1.0;
    for (std::size_t e = 0; e < load.size(); ++e) {
      if (load[e] > capacities[e]) factor = std::min(factor, capacities[e] / load[e] * (1.0 - 1e-12));
    }
    if (factor < 1.0) {
      for (double& lam : paths.initial) lam *= factor;
    }
    scenario.candidates.push_back(normalize_user_paths(scenario.network, std::move(paths)));
  }

  scenario.metadata = {
      {"generator", "random"},
      {"seed", options.seed},
      {"k", options.k},
      {"disjoint", options.disjoint},
      {"xi", options.xi},
      {"capacity_law", "normal(20,3) redrawn below 1"},
      {"path_law", "uniform start node, uniform reachable end node, uniform walk over edges that still reach the end"},
      {"lambda_law", "uniform(0, bottleneck] then joint rescale onto capacities"},
  };
  return scenario;
}

bool is_satisfiable(const CnfFormula& formula) {
  const int n = formula.variable_count;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool all = true;
    for (const auto& clause : formula.clauses) {
      bool any = false;
      for (int lit : clause) {
        const bool value = (mask >> (std::abs(lit) - 1)) & 1U;
        any = any || (lit > 0 ? value : !value);
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

Scenario generate_3sat_instance(const CnfFormula& formula) {
  const int n = formula.variable_count;
  const int k = static_cast<int>(formula.clauses.size());
  if (n < 1 || n > 30) throw Error(ErrorKind::kInvalidFormula, "variable count must be in 1..30");
  if (k < 1) throw Error(ErrorKind::kInvalidFormula, "formula needs at least one clause");
  for (int j = 0; j < k; ++j) {
    const auto& clause = formula.clauses[static_cast<std::size_t>(j)];
    if (clause.empty() || clause.size() > 3) {
      throw Error(ErrorKind::kInvalidFormula, "clause " + std::to_string(j) + " must have 1 to 3 literals");
    }
    std::set<int> vars;
    for (int lit : clause) {
      if (lit == 0 || std::abs(lit) > n) {
        throw Error(ErrorKind::kInvalidFormula, "clause " + std::to_string(j) + " has literal out of range");
      }
      if (!vars.insert(std::abs(lit)).second) {
        throw Error(ErrorKind::kInvalidFormula,
                    "clause " + std::to_string(j) + " mentions variable " + std::to_string(std::abs(lit)) + " twice");
      }
    }
  }

  // Nodes: u_0 … u_n, then (v_i0, v_i1) per variable, then 3n+1 nodes per
  // clause path. Variable i (0-based) owns clause-path edges 3i (negative
  // literal) and 3i+1 (positive literal).
  const int gadget_base = n + 1;
  const int clause_base = gadget_base + 2 * n;
  const int path_nodes = 3 * n + 1;
  auto u = [](int i) { return i; };
  auto v = [&](int i, int polarity) { return gadget_base + 2 * i + polarity; };
  auto clause_node = [&](int j, int pos) { return clause_base + j * path_nodes + pos; };

  std::vector<Arc> edges;
  for (int i = 0; i < n; ++i) {
    edges.push_back({u(i), v(i, 0)});
    edges.push_back({u(i), v(i, 1)});
  }
  UserPaths paths;
  for (int j = 0; j < k; ++j) {
    std::vector<EdgeId> p;
    for (int pos = 0; pos < 3 * n; ++pos) {
      p.push_back(static_cast<EdgeId>(edges.size()));
      edges.push_back({clause_node(j, pos), clause_node(j, pos + 1)});
    }
    paths.paths.push_back(std::move(p));
    paths.initial.push_back(1.0);
  }
  for (int i = 0; i < n; ++i) {
    for (int polarity = 0; polarity < 2; ++polarity) {
      const int literal = polarity == 1 ? i + 1 : -(i + 1);
      const int pos = 3 * i + polarity;
      NodeId prev = v(i, polarity);
      for (int j = 0; j < k; ++j) {
        const auto& clause = formula.clauses[static_cast<std::size_t>(j)];
        if (std::find(clause.begin(), clause.end(), literal) == clause.end()) continue;
        edges.push_back({prev, clause_node(j, pos)});
        prev = clause_node(j, pos + 1);
      }
      edges.push_back({prev, u(i + 1)});
    }
  }
  const int node_count = clause_base + k * path_nodes;
  std::vector<double> capacities(edges.size(), 1.0);
  Network net(node_count, std::move(edges), std::move(capacities), u(0), u(n), 1.0);
  json clauses = json::array();
  for (const auto& c : formula.clauses) clauses.push_back(c);
  Scenario scenario{std::move(net), ScenarioMode::kDeterministic, {}, json::object()};
  scenario.candidates.push_back(normalize_user_paths(scenario.network, std::move(paths)));
  scenario.metadata = {{"generator", "3sat"}, {"variables", n}, {"clauses", clauses}};
  return scenario;
}

std::string canonical_dump(const json& value) {
  std::string out;
  dump_into(value, out);
  return out;
}

std::string scenario_to_json(const Scenario& s) {
  const Network& net = s.network;
  std::string out = "{\n";
  out += "  \"nodes\": " + std::to_string(net.node_count()) + ",\n";
  out += "  \"edges\": [";
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    out += e == 0 ? "\n" : ",\n";
    out += "    [" + std::to_string(net.edge(e).tail) + ", " + std::to_string(net.edge(e).head) + ", " +
           format_double(net.capacity(e)) + "]";
  }
  out += net.edge_count() > 0 ? "\n  ],\n" : "],\n";
  out += "  \"source\": " + std::to_string(net.source()) + ",\n";
  out += "  \"sink\": " + std::to_string(net.sink()) + ",\n";
  out += "  \"budget\": " + format_double(net.budget()) + ",\n";
  out += std::string("  \"mode\": \"") +
         (s.mode == ScenarioMode::kRobust ? "robust" : "deterministic") + "\",\n";
  out += "  \"candidates\": [";
  for (std::size_t c = 0; c < s.candidates.size(); ++c) {
    const UserPaths& p = s.candidates[c];
    out += c == 0 ? "\n" : ",\n";
    out += "    {\"paths\": [";
    for (std::size_t i = 0; i < p.paths.size(); ++i) {
      if (i > 0) out += ", ";
      out += "[";
      for (std::size_t j = 0; j < p.paths[i].size(); ++j) {
        if (j > 0) out += ", ";
        out += std::to_string(p.paths[i][j]);
      }
      out += "]";
    }
    out += "], \"lambdas\": [";
    for (std::size_t i = 0; i < p.initial.size(); ++i) {
      if (i > 0) out += ", ";
      out += format_double(p.initial[i]);
    }
    out += "]}";
  }
  out += s.candidates.empty() ? "],\n" : "\n  ],\n";
  out += "  \"metadata\": " + (s.metadata.is_null() ? std::string("{}") : canonical_dump(s.metadata)) + "\n}\n";
  return out;
}

Scenario scenario_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) schema("", "top level must be an object");
  const long long nodes = integer_at(require(doc, "nodes", ""), "/nodes");
  if (nodes <= 0 || nodes > (1LL << 30)) schema("/nodes", "must be a positive node count");
  const json& edges_json = require(doc, "edges", "");
  if (!edges_json.is_array()) schema("/edges", "expected an array");
  std::vector<Arc> edges;
  std::vector<double> capacities;
  for (std::size_t e = 0; e < edges_json.size(); ++e) {
    const std::string ptr = "/edges/" + std::to_string(e);
    const json& item = edges_json[e];
    if (!item.is_array() || item.size() != 3) schema(ptr, "expected [tail, head, capacity]");
    const long long tail = integer_at(item[0], ptr + "/0");
    const long long head = integer_at(item[1], ptr + "/1");
    if (tail < 0 || tail >= nodes) schema(ptr + "/0", "node out of range");
    if (head < 0 || head >= nodes) schema(ptr + "/1", "node out of range");
    edges.push_back({static_cast<NodeId>(tail), static_cast<NodeId>(head)});
    capacities.push_back(number_at(item[2], ptr + "/2"));
  }
  const long long source = integer_at(require(doc, "source", ""), "/source");
  const long long sink = integer_at(require(doc, "sink", ""), "/sink");
  const double budget = number_at(require(doc, "budget", ""), "/budget");
  const json& mode_json = require(doc, "mode", "");
  if (!mode_json.is_string()) schema("/mode", "expected a string");
  const std::string mode = mode_json.get<std::string>();
  if (mode != "deterministic" && mode != "robust") {
    schema("/mode", "expected \"deterministic\" or \"robust\"");
  }
  if (source < 0 || source >= nodes) schema("/source", "node out of range");
  if (sink < 0 || sink >= nodes) schema("/sink", "node out of range");

  Network net(static_cast<int>(nodes), std::move(edges), std::move(capacities),
              static_cast<NodeId>(source), static_cast<NodeId>(sink), budget);
  Scenario s{std::move(net), mode == "robust" ? ScenarioMode::kRobust : ScenarioMode::kDeterministic,
             {}, json::object()};

  const json& cands = require(doc, "candidates", "");
  if (!cands.is_array()) schema("/candidates", "expected an array");
  if (cands.empty()) schema("/candidates", "needs at least one candidate");
  if (s.mode == ScenarioMode::kDeterministic && cands.size() != 1) {
    schema("/candidates", "deterministic scenarios have exactly one candidate");
  }
  for (std::size_t c = 0; c < cands.size(); ++c) {
    const std::string base = "/candidates/" + std::to_string(c);
    const json& pj = require(cands[c], "paths", base);
    const json& lj = require(cands[c], "lambdas", base);
    if (!pj.is_array()) schema(base + "/paths", "expected an array");
    if (!lj.is_array()) schema(base + "/lambdas", "expected an array");
    if (pj.size() != lj.size()) schema(base + "/lambdas", "one value per path required");
    UserPaths paths;
    for (std::size_t i = 0; i < pj.size(); ++i) {
      const std::string ptr = base + "/paths/" + std::to_string(i);
      if (!pj[i].is_array()) schema(ptr, "expected an array of edge indices");
      std::vector<EdgeId> p;
      for (std::size_t j = 0; j < pj[i].size(); ++j) {
        const long long e = integer_at(pj[i][j], ptr + "/" + std::to_string(j));
        if (e < 0 || e >= s.network.edge_count()) schema(ptr + "/" + std::to_string(j), "edge out of range");
        p.push_back(static_cast<EdgeId>(e));
      }
      paths.paths.push_back(std::move(p));
      paths.initial.push_back(number_at(lj[i], base + "/lambdas/" + std::to_string(i)));
    }
    s.candidates.push_back(normalize_user_paths(s.network, std::move(paths)));
  }
  if (auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) schema("/metadata", "expected an object");
    s.metadata = *it;
  }
  return s;
}

void save_scenario(const Scenario& scenario, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kInvalidInput, "cannot write " + path);
  out << scenario_to_json(scenario);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidInput, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

}  // namespace flowjam
