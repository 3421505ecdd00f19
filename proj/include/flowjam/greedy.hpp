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


#ifndef FLOWJAM_GREEDY_HPP_
#define FLOWJAM_GREEDY_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "flowjam/edge_set.hpp"
#include "flowjam/network.hpp"
#include "flowjam/throughput.hpp"

namespace flowjam {

// Edge-set function g maximized by the search. The caller vouches for
// monotonicity and submodularity; the search only uses gain_X(A) = g(A ∪ X) − g(X).
using GainFunction = std::function<double(const EdgeSet&)>;

struct GreedyConfig {
  int depth = 0;
  int anchors = 2;  // a; each level places a − 1 anchor nodes
};

// ceil(log2 n), at least 1.
int default_depth(int node_count);

struct GreedyStats {
  std::uint64_t calls = 0;        // recursive invocations, memo hits included
  std::uint64_t evaluations = 0;  // distinct g evaluations
};

// Recursive greedy search for a u1-u2 path maximizing gain_X. Depth 0 returns
// the shortest path. Otherwise the shortest path is the incumbent and each
// anchor tuple (ascending, lexicographic) chains depth − 1 subsearches, each
// seeing X plus the edges already chosen; a candidate replaces the incumbent
// only on a strictly larger gain. Returns the edge-set union. Throws
// Error(kInfeasible) when u2 is unreachable from u1 and Error(kInvalidInput)
// when a < 2 or depth < 0.
EdgeSet recursive_greedy(const Network& net, const GainFunction& gain, NodeId u1, NodeId u2,
                         const EdgeSet& x, int depth, int anchors, GreedyStats* stats = nullptr);

// Single-path flow carrying γ on each edge of a simple s-t path. Throws
// Error(kNotAPath) otherwise.
Flow path_to_flow(const Network& net, std::span<const EdgeId> path);
Flow path_to_flow(const Network& net, const EdgeSet& edges);

// The simple s-t path inside `edges` with the largest true reduction, ties
// going to the larger gain and then the earlier DFS path. Throws
// Error(kNotAPath) when the union holds no s-t path.
std::vector<EdgeId> extract_simple_path(const ThroughputModel& model, const GainFunction& gain,
                                        const EdgeSet& edges);

struct DeterministicResult {
  std::vector<EdgeId> path;
  double reduction = 0.0;  // true Λ of `path`
  GreedyStats stats;
};

// Recursive greedy from s to t with g = Λ on disjoint paths and g = Λ̄ otherwise.
DeterministicResult deterministic_interdict(const ThroughputModel& model, const GreedyConfig& cfg);

}  // namespace flowjam

#endif  // FLOWJAM_GREEDY_HPP_
