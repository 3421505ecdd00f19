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


#include "flowjam/network.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>

#include "flowjam/errors.hpp"

namespace flowjam {
namespace {

long long edge_key(NodeId tail, NodeId head) {
  return (static_cast<long long>(tail) << 32) | static_cast<unsigned int>(head);
}

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorKind::kInvalidInput, what);
}

}  // namespace

std::vector<NodeId> topological_order(int node_count, std::span<const Arc> edges) {
  std::vector<int> in_degree(static_cast<std::size_t>(node_count), 0);
  std::vector<std::vector<NodeId>> succ(static_cast<std::size_t>(node_count));
  for (const Arc& a : edges) {
    succ[static_cast<std::size_t>(a.tail)].push_back(a.head);
    ++in_degree[static_cast<std::size_t>(a.head)];
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId v = 0; v < node_count; ++v) {
    if (in_degree[static_cast<std::size_t>(v)] == 0) ready.push(v);
  }
  std::vector<NodeId> order;
  order.reserve(static_cast<std::size_t>(node_count));
  while (!ready.empty()) {
    const NodeId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (NodeId w : succ[static_cast<std::size_t>(v)]) {
      if (--in_degree[static_cast<std::size_t>(w)] == 0) ready.push(w);
    }
  }
  if (static_cast<int>(order.size()) != node_count) {
    throw Error(ErrorKind::kCycleDetected, "graph contains a directed cycle");
  }
  return order;
}

Network::Network(int node_count, std::vector<Arc> edges, std::vector<double> capacities,
                 NodeId source, NodeId sink, double budget)
    : node_count_(node_count),
      edges_(std::move(edges)),
      capacities_(std::move(capacities)),
      source_(source),
      sink_(sink),
      budget_(budget) {
  if (node_count_ <= 0) invalid("node count must be positive");
  if (capacities_.size() != edges_.size()) invalid("one capacity per edge required");
  auto valid_node = [&](NodeId v) { return v >= 0 && v < node_count_; };
  if (!valid_node(source_) || !valid_node(sink_)) invalid("source/sink out of range");
  if (source_ == sink_) invalid("source and sink must differ");
  if (!std::isfinite(budget_) || budget_ < 0.0) invalid("budget must be a finite nonnegative number");

  out_.resize(static_cast<std::size_t>(node_count_));
  in_.resize(static_cast<std::size_t>(node_count_));
  double min_capacity = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Arc& a = edges_[e];
    if (!valid_node(a.tail) || !valid_node(a.head)) {
      invalid("edge " + std::to_string(e) + " has an endpoint out of range");
    }
    if (a.tail == a.head) invalid("edge " + std::to_string(e) + " is a self-loop");
    if (!edge_index_.emplace(edge_key(a.tail, a.head), static_cast<EdgeId>(e)).second) {
      invalid("duplicate edge (" + std::to_string(a.tail) + "," + std::to_string(a.head) + ")");
    }
    const double c = capacities_[e];
    if (!std::isfinite(c) || c < 0.0) invalid("edge " + std::to_string(e) + " has an invalid capacity");
    min_capacity = std::min(min_capacity, c);
    out_[static_cast<std::size_t>(a.tail)].push_back(static_cast<EdgeId>(e));
    in_[static_cast<std::size_t>(a.head)].push_back(static_cast<EdgeId>(e));
  }
  if (!edges_.empty() && budget_ > min_capacity + kFlowTolerance) {
    invalid("budget exceeds the smallest edge capacity");
  }
  for (auto& list : out_) {
    std::sort(list.begin(), list.end(),
              [&](EdgeId x, EdgeId y) { return edge(x).head < edge(y).head; });
  }
  for (auto& list : in_) {
    std::sort(list.begin(), list.end(),
              [&](EdgeId x, EdgeId y) { return edge(x).tail < edge(y).tail; });
  }

  topo_ = flowjam::topological_order(node_count_, edges_);

  // Reverse topological sweep: a node reaches itself plus whatever its
  // successors reach.
  reach_.assign(static_cast<std::size_t>(node_count_),
                std::vector<bool>(static_cast<std::size_t>(node_count_), false));
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    auto& row = reach_[static_cast<std::size_t>(*it)];
    row[static_cast<std::size_t>(*it)] = true;
    for (EdgeId e : out_[static_cast<std::size_t>(*it)]) {
      const auto& succ = reach_[static_cast<std::size_t>(edge(e).head)];
      for (std::size_t w = 0; w < succ.size(); ++w) {
        if (succ[w]) row[w] = true;
      }
    }
  }
  if (!reaches(source_, sink_)) invalid("sink is not reachable from source");
}

std::optional<EdgeId> Network::find_edge(NodeId tail, NodeId head) const {
  const auto it = edge_index_.find(edge_key(tail, head));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

bool Network::reaches(NodeId from, NodeId to) const {
  return reach_[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
}

std::vector<NodeId> topological_order(const Network& net) { return net.topological_order(); }

std::optional<std::vector<EdgeId>> shortest_path(const Network& net, NodeId u1, NodeId u2) {
  if (u1 == u2) return std::vector<EdgeId>{};
  if (!net.reaches(u1, u2)) return std::nullopt;
  const auto n = static_cast<std::size_t>(net.node_count());
  std::vector<int> dist(n, -1);
  std::queue<NodeId> frontier;
  dist[static_cast<std::size_t>(u1)] = 0;
  frontier.push(u1);
  while (!frontier.empty()) {
    const NodeId v = frontier.front();
    frontier.pop();
    if (v == u2) break;
    for (EdgeId e : net.out_edges(v)) {
      const NodeId w = net.edge(e).head;
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        frontier.push(w);
      }
    }
  }
  std::vector<EdgeId> path;
  NodeId v = u2;
  while (v != u1) {
    // in_edges are sorted by tail, so the first match is the smallest predecessor.
    for (EdgeId e : net.in_edges(v)) {
      const NodeId p = net.edge(e).tail;
      if (dist[static_cast<std::size_t>(p)] >= 0 &&
          dist[static_cast<std::size_t>(p)] == dist[static_cast<std::size_t>(v)] - 1) {
        path.push_back(e);
        v = p;
        break;
      }
    }
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<std::vector<EdgeId>> enumerate_paths(const Network& net, NodeId u, NodeId v,
                                                 std::size_t cap) {
  std::vector<std::vector<EdgeId>> paths;
  if (!net.reaches(u, v)) return paths;
  std::vector<EdgeId> current;
  // Iterative DFS; each frame remembers the next out-edge to try.
  std::vector<std::pair<NodeId, std::size_t>> stack{{u, 0}};
  if (u == v) {
    paths.emplace_back();
    return paths;
  }
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    const auto out = net.out_edges(node);
    if (next == out.size()) {
      stack.pop_back();
      if (!current.empty()) current.pop_back();
      continue;
    }
    const EdgeId e = out[next++];
    const NodeId w = net.edge(e).head;
    if (!net.reaches(w, v)) continue;
    if (w == v) {
      current.push_back(e);
      paths.push_back(current);
      current.pop_back();
      if (paths.size() > cap) throw PathBudgetExceeded(paths.size(), cap);
      continue;
    }
    current.push_back(e);
    stack.emplace_back(w, 0);
  }
  return paths;
}

std::vector<std::vector<EdgeId>> enumerate_st_paths(const Network& net, std::size_t cap) {
  return enumerate_paths(net, net.source(), net.sink(), cap);
}

double count_paths(const Network& net, NodeId u, NodeId v) {
  std::vector<double> ways(static_cast<std::size_t>(net.node_count()), 0.0);
  ways[static_cast<std::size_t>(u)] = 1.0;
  for (NodeId x : net.topological_order()) {
    const double here = ways[static_cast<std::size_t>(x)];
    if (here == 0.0 || x == v) continue;
    for (EdgeId e : net.out_edges(x)) ways[static_cast<std::size_t>(net.edge(e).head)] += here;
  }
  return u == v ? 1.0 : ways[static_cast<std::size_t>(v)];
}

bool is_simple_path(const Network& net, std::span<const EdgeId> path, NodeId u, NodeId v) {
  if (path.empty()) return u == v;
  std::vector<bool> seen(static_cast<std::size_t>(net.node_count()), false);
  NodeId at = u;
  seen[static_cast<std::size_t>(at)] = true;
  for (EdgeId e : path) {
    if (e < 0 || e >= net.edge_count() || net.edge(e).tail != at) return false;
    at = net.edge(e).head;
    if (seen[static_cast<std::size_t>(at)]) return false;
    seen[static_cast<std::size_t>(at)] = true;
  }
  return at == v;
}

std::optional<std::vector<EdgeId>> order_as_path(const Network& net, const EdgeSet& edges,
                                                 NodeId u, NodeId v) {
  std::vector<EdgeId> path;
  NodeId at = u;
  const std::size_t total = edges.size();
  while (path.size() < total) {
    std::optional<EdgeId> next;
    for (EdgeId e : net.out_edges(at)) {
      if (!edges.contains(e)) continue;
      if (next) return std::nullopt;  // branching
      next = e;
    }
    if (!next) return std::nullopt;
    path.push_back(*next);
    at = net.edge(*next).head;
  }
  if (at != v || !is_simple_path(net, path, u, v)) return std::nullopt;
  return path;
}

double flow_value(const Network& net, const Flow& f) {
  double value = 0.0;
  for (EdgeId e : net.out_edges(net.source())) value += f.values[static_cast<std::size_t>(e)];
  return value;
}

FlowCheck validate_flow(const Network& net, const Flow& f, double bound) {
  FlowCheck check;
  auto fail = [&](const std::string& msg) {
    check.valid = false;
    check.diagnostics.push_back(msg);
  };
  if (f.values.size() != static_cast<std::size_t>(net.edge_count())) {
    fail("flow has " + std::to_string(f.values.size()) + " entries, expected " +
         std::to_string(net.edge_count()));
    return check;
  }
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const double x = f.values[static_cast<std::size_t>(e)];
    if (!std::isfinite(x) || x < -kFlowTolerance) {
      fail("capacity violation on edge " + std::to_string(e) + ": negative flow");
    } else if (x > net.capacity(e) + kFlowTolerance) {
      std::ostringstream os;
      os << "capacity violation on edge " << e << ": flow " << x << " > capacity "
         << net.capacity(e);
      fail(os.str());
    }
  }
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (v == net.source() || v == net.sink()) continue;
    double balance = 0.0;
    for (EdgeId e : net.in_edges(v)) balance += f.values[static_cast<std::size_t>(e)];
    for (EdgeId e : net.out_edges(v)) balance -= f.values[static_cast<std::size_t>(e)];
    if (std::abs(balance) > kFlowTolerance) {
      std::ostringstream os;
      os << "conservation violation at node " << v << ": imbalance " << balance;
      fail(os.str());
    }
  }
  const double value = flow_value(net, f);
  if (value > bound + kFlowTolerance) {
    std::ostringstream os;
    os << "flow value " << value << " exceeds bound " << bound;
    fail(os.str());
  }
  return check;
}

std::vector<FlowComponent> decompose_flow(const Network& net, const Flow& f) {
  const FlowCheck check =
      validate_flow(net, f, std::numeric_limits<double>::infinity());
  if (!check.valid) throw Error(ErrorKind::kNotAFlow, check.diagnostics.front());

  std::vector<double> rest = f.values;
  std::vector<FlowComponent> components;
  const auto m = static_cast<std::size_t>(net.edge_count());
  while (components.size() <= m) {
    double remaining = 0.0;
    for (EdgeId e : net.out_edges(net.source())) remaining += rest[static_cast<std::size_t>(e)];
    if (remaining <= kFlowTolerance) break;

    std::vector<EdgeId> path;
    NodeId at = net.source();
    while (at != net.sink()) {
      std::optional<EdgeId> step;
      for (EdgeId e : net.out_edges(at)) {
        if (rest[static_cast<std::size_t>(e)] > kFlowTolerance) {
          step = e;
          break;
        }
      }
      if (!step) throw Error(ErrorKind::kNotAFlow, "flow support is not connected to the sink");
      path.push_back(*step);
      at = net.edge(*step).head;
    }
    double weight = std::numeric_limits<double>::infinity();
    for (EdgeId e : path) weight = std::min(weight, rest[static_cast<std::size_t>(e)]);
    for (EdgeId e : path) rest[static_cast<std::size_t>(e)] -= weight;
    components.push_back({weight, std::move(path)});
  }
  return components;
}

AcyclicSubgraph remove_feedback_edges(const DirectedGraph& graph) {
  const auto n = static_cast<std::size_t>(graph.node_count);
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    out[static_cast<std::size_t>(graph.edges[e].tail)].push_back(e);
  }
  for (auto& list : out) {
    std::sort(list.begin(), list.end(), [&](std::size_t x, std::size_t y) {
      return graph.edges[x].head < graph.edges[y].head;
    });
  }

  enum class Mark { kNew, kActive, kDone };
  std::vector<Mark> mark(n, Mark::kNew);
  std::vector<bool> dropped(graph.edges.size(), false);
  for (std::size_t root = 0; root < n; ++root) {
    if (mark[root] != Mark::kNew) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    mark[root] = Mark::kActive;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == out[v].size()) {
        mark[v] = Mark::kDone;
        stack.pop_back();
        continue;
      }
      const std::size_t e = out[v][next++];
      const auto w = static_cast<std::size_t>(graph.edges[e].head);
      if (mark[w] == Mark::kActive) {
        dropped[e] = true;
      } else if (mark[w] == Mark::kNew) {
        mark[w] = Mark::kActive;
        stack.emplace_back(w, 0);
      }
    }
  }

  // Restore pass: put back any dropped edge (u,v) for which v cannot reach u.
  std::vector<std::vector<NodeId>> adj(n);
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    if (!dropped[e]) {
      adj[static_cast<std::size_t>(graph.edges[e].tail)].push_back(graph.edges[e].head);
    }
  }
  auto reaches = [&](NodeId from, NodeId to) {
    std::vector<bool> seen(n, false);
    std::vector<NodeId> todo{from};
    seen[static_cast<std::size_t>(from)] = true;
    while (!todo.empty()) {
      const NodeId v = todo.back();
      todo.pop_back();
      if (v == to) return true;
      for (NodeId w : adj[static_cast<std::size_t>(v)]) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          todo.push_back(w);
        }
      }
    }
    return false;
  };
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    if (!dropped[e]) continue;
    const Arc& a = graph.edges[e];
    if (!reaches(a.head, a.tail)) {
      dropped[e] = false;
      adj[static_cast<std::size_t>(a.tail)].push_back(a.head);
    }
  }

  AcyclicSubgraph result;
  result.graph.node_count = graph.node_count;
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    (dropped[e] ? result.removed : result.graph.edges).push_back(graph.edges[e]);
  }
  return result;
}

}  // namespace flowjam
