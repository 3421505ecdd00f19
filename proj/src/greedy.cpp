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


#include "flowjam/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <unordered_map>

#include "flowjam/errors.hpp"

namespace flowjam {
namespace {

constexpr double kGainTolerance = 1e-12;

struct CallKey {
  NodeId u1;
  NodeId u2;
  int depth;
  EdgeSet x;
  friend bool operator==(const CallKey&, const CallKey&) = default;
};

struct CallKeyHash {
  std::size_t operator()(const CallKey& k) const {
    std::size_t h = k.x.hash();
    h ^= (static_cast<std::size_t>(k.u1) * 0x9E3779B97F4A7C15ULL) + (h << 6) + (h >> 2);
    h ^= (static_cast<std::size_t>(k.u2) * 0xC2B2AE3D27D4EB4FULL) + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(k.depth) + (h << 6) + (h >> 2);
    return h;
  }
};

class Search {
 public:
  Search(const Network& net, const GainFunction& gain, int anchors, GreedyStats& stats)
      : net_(net), gain_(gain), anchors_(anchors), stats_(stats) {}

  std::optional<EdgeSet> run(NodeId u1, NodeId u2, const EdgeSet& x, int depth) {
    ++stats_.calls;
    if (!net_.reaches(u1, u2)) return std::nullopt;
    CallKey key{u1, u2, depth, x};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    EdgeSet best = shortest(u1, u2);
    if (depth > 0 && u1 != u2) {
      double best_value = value(best | x);
      std::vector<NodeId> tuple;
      extend(u1, u2, depth, x, EdgeSet(best.universe()), tuple, best, best_value);
    }
    memo_.emplace(std::move(key), best);
    return best;
  }

 private:
  // Places anchor number tuple.size() + 1 after the previous one. `seen` is X
  // plus the segments chosen so far (what the next subsearch conditions on);
  // `chain` is the segments alone. Once a − 1 anchors are placed the chain is
  // closed into u2 and compared against the incumbent.
  void extend(NodeId u1, NodeId u2, int depth, const EdgeSet& seen, const EdgeSet& chain,
              std::vector<NodeId>& tuple, EdgeSet& best, double& best_value) {
    const NodeId prev = tuple.empty() ? u1 : tuple.back();
    if (static_cast<int>(tuple.size()) == anchors_ - 1) {
      bool trivial = true;
      for (NodeId v : tuple) trivial = trivial && (v == u1 || v == u2);
      if (trivial) return;
      auto last = run(prev, u2, seen, depth - 1);
      if (!last) return;
      const double v = value(seen | *last);
      if (v > best_value + kGainTolerance * (1.0 + std::abs(best_value))) {
        best_value = v;
        best = chain | *last;
      }
      return;
    }
    for (NodeId v = 0; v < net_.node_count(); ++v) {
      if (!net_.reaches(prev, v) || !net_.reaches(v, u2)) continue;
      if (anchors_ == 2 && (v == u1 || v == u2)) continue;
      auto segment = run(prev, v, seen, depth - 1);
      if (!segment) continue;
      tuple.push_back(v);
      extend(u1, u2, depth, seen | *segment, chain | *segment, tuple, best, best_value);
      tuple.pop_back();
    }
  }

  EdgeSet shortest(NodeId u1, NodeId u2) {
    const long long key = static_cast<long long>(u1) * net_.node_count() + u2;
    if (auto it = shortest_.find(key); it != shortest_.end()) return it->second;
    const auto path = shortest_path(net_, u1, u2);
    EdgeSet set(static_cast<std::size_t>(net_.edge_count()), *path);
    shortest_.emplace(key, set);
    return set;
  }

  double value(const EdgeSet& a) {
    if (auto it = values_.find(a); it != values_.end()) return it->second;
    ++stats_.evaluations;
    const double v = gain_(a);
    values_.emplace(a, v);
    return v;
  }

  const Network& net_;
  const GainFunction& gain_;
  int anchors_;
  GreedyStats& stats_;
  std::unordered_map<CallKey, std::optional<EdgeSet>, CallKeyHash> memo_;
  std::unordered_map<EdgeSet, double, EdgeSetHash> values_;
  std::unordered_map<long long, EdgeSet> shortest_;
};

}  // namespace

int default_depth(int node_count) {
  int depth = 0;
  while ((1LL << depth) < node_count) ++depth;
  return std::max(depth, 1);
}

EdgeSet recursive_greedy(const Network& net, const GainFunction& gain, NodeId u1, NodeId u2,
                         const EdgeSet& x, int depth, int anchors, GreedyStats* stats) {
  if (depth < 0 || anchors < 2) {
    throw Error(ErrorKind::kInvalidInput, "recursive greedy needs depth >= 0 and anchors >= 2");
  }
  GreedyStats local;
  Search search(net, gain, anchors, stats != nullptr ? *stats : local);
  auto result = search.run(u1, u2, x, depth);
  if (!result) {
    throw Error(ErrorKind::kInfeasible,
                "no path from " + std::to_string(u1) + " to " + std::to_string(u2));
  }
  return *result;
}

Flow path_to_flow(const Network& net, std::span<const EdgeId> path) {
  if (!is_simple_path(net, path, net.source(), net.sink())) {
    throw Error(ErrorKind::kNotAPath, "edge list is not a simple s-t path");
  }
  Flow f{std::vector<double>(static_cast<std::size_t>(net.edge_count()), 0.0)};
  for (EdgeId e : path) f.values[static_cast<std::size_t>(e)] = net.budget();
  return f;
}

Flow path_to_flow(const Network& net, const EdgeSet& edges) {
  auto path = order_as_path(net, edges, net.source(), net.sink());
  if (!path) throw Error(ErrorKind::kNotAPath, "edge set is not a simple s-t path");
  return path_to_flow(net, *path);
}

std::vector<EdgeId> extract_simple_path(const ThroughputModel& model, const GainFunction& gain,
                                        const EdgeSet& edges) {
  const Network& net = model.network();
  if (auto direct = order_as_path(net, edges, net.source(), net.sink())) return *direct;

  std::vector<EdgeId> best;
  double best_lambda = -1.0;
  double best_gain = -1.0;
  std::vector<EdgeId> current;
  std::function<void(NodeId)> dfs = [&](NodeId v) {
    if (v == net.sink()) {
      const EdgeSet set(static_cast<std::size_t>(net.edge_count()), current);
      const double lam = model.lambda(set);
      const double g = gain(set);
      if (lam > best_lambda + kGainTolerance ||
          (std::abs(lam - best_lambda) <= kGainTolerance && g > best_gain + kGainTolerance)) {
        best = current;
        best_lambda = lam;
        best_gain = g;
      }
      return;
    }
    for (EdgeId e : net.out_edges(v)) {
      if (!edges.contains(e)) continue;
      current.push_back(e);
      dfs(net.edge(e).head);
      current.pop_back();
    }
  };
  dfs(net.source());
  if (best_lambda < 0.0) throw Error(ErrorKind::kNotAPath, "edge set holds no s-t path");
  return best;
}

DeterministicResult deterministic_interdict(const ThroughputModel& model, const GreedyConfig& cfg) {
  const Network& net = model.network();
  GainFunction gain;
  if (model.disjoint()) {
    gain = [&model](const EdgeSet& a) { return model.lambda(a); };
  } else {
    gain = [&model](const EdgeSet& a) { return model.lambda_bar(a); };
  }
  DeterministicResult result;
  const EdgeSet chosen = recursive_greedy(net, gain, net.source(), net.sink(), net.empty_edge_set(),
                                          cfg.depth, cfg.anchors, &result.stats);
  result.path = extract_simple_path(model, gain, chosen);
  result.reduction = model.lambda_path(result.path);
  return result;
}

}  // namespace flowjam
