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


#ifndef FLOWJAM_NETWORK_HPP_
#define FLOWJAM_NETWORK_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "flowjam/edge_set.hpp"

namespace flowjam {

using NodeId = int;

// Absolute tolerance for flow and capacity arithmetic.
inline constexpr double kFlowTolerance = 1e-9;

struct Arc {
  NodeId tail = 0;
  NodeId head = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

// Raw directed graph as read from disk, before capacities and endpoints are
// attached. May contain cycles.
struct DirectedGraph {
  int node_count = 0;
  std::vector<Arc> edges;
};

// Kahn's algorithm; ready nodes are released smallest index first.
// Throws Error(kCycleDetected) when no topological order exists.
std::vector<NodeId> topological_order(int node_count, std::span<const Arc> edges);

// Capacitated simple DAG with the interdictor's source, sink and budget.
// Immutable once constructed; the constructor enforces every model invariant.
class Network {
 public:
  Network(int node_count, std::vector<Arc> edges, std::vector<double> capacities,
          NodeId source, NodeId sink, double budget);

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Arc>& edges() const { return edges_; }
  const Arc& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  const std::vector<double>& capacities() const { return capacities_; }
  double capacity(EdgeId e) const { return capacities_[static_cast<std::size_t>(e)]; }
  NodeId source() const { return source_; }
  NodeId sink() const { return sink_; }
  double budget() const { return budget_; }

  // Outgoing / incoming edge ids, ordered by neighbor index.
  std::span<const EdgeId> out_edges(NodeId v) const { return out_[static_cast<std::size_t>(v)]; }
  std::span<const EdgeId> in_edges(NodeId v) const { return in_[static_cast<std::size_t>(v)]; }

  std::optional<EdgeId> find_edge(NodeId tail, NodeId head) const;

  const std::vector<NodeId>& topological_order() const { return topo_; }
  // Reflexive reachability: reaches(v, v) is true.
  bool reaches(NodeId from, NodeId to) const;

  EdgeSet empty_edge_set() const { return EdgeSet(edges_.size()); }

 private:
  int node_count_;
  std::vector<Arc> edges_;
  std::vector<double> capacities_;
  NodeId source_;
  NodeId sink_;
  double budget_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  std::vector<NodeId> topo_;
  std::vector<std::vector<bool>> reach_;
  std::unordered_map<long long, EdgeId> edge_index_;
};

std::vector<NodeId> topological_order(const Network& net);

// Minimum-hop u1-u2 path as an ordered edge list; among equally short paths
// each node takes its smallest-index predecessor. u1 == u2 yields the empty
// path. std::nullopt when u2 is unreachable.
std::optional<std::vector<EdgeId>> shortest_path(const Network& net, NodeId u1, NodeId u2);

// All simple u-v paths in DFS order (neighbors ascending). Throws
// PathBudgetExceeded once more than `cap` paths have been found.
std::vector<std::vector<EdgeId>> enumerate_paths(const Network& net, NodeId u, NodeId v,
                                                 std::size_t cap);
std::vector<std::vector<EdgeId>> enumerate_st_paths(const Network& net, std::size_t cap);

// Number of u-v paths, by dynamic programming over the topological order.
double count_paths(const Network& net, NodeId u, NodeId v);

// True iff the edges, in the given order, form a simple directed path from u to v.
bool is_simple_path(const Network& net, std::span<const EdgeId> path, NodeId u, NodeId v);

// Orders an unordered edge set into a u-v path; std::nullopt if it is not one.
std::optional<std::vector<EdgeId>> order_as_path(const Network& net, const EdgeSet& edges,
                                                 NodeId u, NodeId v);

struct Flow {
  std::vector<double> values;
};

double flow_value(const Network& net, const Flow& f);

struct FlowCheck {
  bool valid = true;
  std::vector<std::string> diagnostics;
};

// Capacity, conservation and val(f) <= bound, each within kFlowTolerance.
FlowCheck validate_flow(const Network& net, const Flow& f, double bound);

struct FlowComponent {
  double weight = 0.0;
  std::vector<EdgeId> path;
};

// Path decomposition of an s-t flow. Each round follows the support from s
// taking the smallest-index head at every node and peels that path's
// bottleneck. Throws Error(kNotAFlow) on an invalid flow.
std::vector<FlowComponent> decompose_flow(const Network& net, const Flow& f);

struct AcyclicSubgraph {
  DirectedGraph graph;
  std::vector<Arc> removed;
};

// DFS back-edge deletion followed by a greedy restore pass, so the removed
// set is inclusion-minimal (restoring any one removed edge closes a cycle).
AcyclicSubgraph remove_feedback_edges(const DirectedGraph& graph);

}  // namespace flowjam

#endif  // FLOWJAM_NETWORK_HPP_
