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


#include "flowjam/throughput.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "flowjam/errors.hpp"
#include "flowjam/lp.hpp"

namespace flowjam {
namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::kInvalidInput, what); }

std::vector<EdgeId> order_path(const Network& net, const std::vector<EdgeId>& edges,
                               std::size_t index) {
  const std::string where = "user path " + std::to_string(index);
  if (edges.empty()) invalid(where + " is empty");
  EdgeSet set(static_cast<std::size_t>(net.edge_count()));
  for (EdgeId e : edges) {
    if (e < 0 || e >= net.edge_count()) invalid(where + " references edge " + std::to_string(e));
    if (set.contains(e)) invalid(where + " repeats edge " + std::to_string(e));
    set.insert(e);
  }
  std::set<NodeId> heads;
  for (EdgeId e : edges) heads.insert(net.edge(e).head);
  std::optional<NodeId> start;
  std::optional<NodeId> end;
  for (EdgeId e : edges) {
    if (!heads.contains(net.edge(e).tail)) {
      if (start) invalid(where + " is not connected");
      start = net.edge(e).tail;
    }
  }
  std::set<NodeId> tails;
  for (EdgeId e : edges) tails.insert(net.edge(e).tail);
  for (EdgeId e : edges) {
    if (!tails.contains(net.edge(e).head)) end = net.edge(e).head;
  }
  if (!start || !end) invalid(where + " is not a simple path");
  auto ordered = order_as_path(net, set, *start, *end);
  if (!ordered) invalid(where + " is not a simple path");
  return *ordered;
}

}  // namespace

UserPaths normalize_user_paths(const Network& net, UserPaths paths) {
  if (paths.paths.size() != paths.initial.size()) {
    invalid("expected one initial value per user path");
  }
  std::vector<double> load(static_cast<std::size_t>(net.edge_count()), 0.0);
  for (std::size_t i = 0; i < paths.paths.size(); ++i) {
    const double lam = paths.initial[i];
    if (!std::isfinite(lam) || lam < 0.0) {
      invalid("initial value of user path " + std::to_string(i) + " must be nonnegative");
    }
    paths.paths[i] = order_path(net, paths.paths[i], i);
    for (EdgeId e : paths.paths[i]) load[static_cast<std::size_t>(e)] += lam;
  }
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (load[static_cast<std::size_t>(e)] > net.capacity(e) + kFlowTolerance) {
      invalid("initial flows exceed the capacity of edge " + std::to_string(e));
    }
  }
  return paths;
}

PathPartition partition_user_edges(const Network& net, const UserPaths& paths) {
  const auto m = static_cast<std::size_t>(net.edge_count());
  std::vector<int> count(m, 0);
  for (const auto& p : paths.paths) {
    for (EdgeId e : p) ++count[static_cast<std::size_t>(e)];
  }
  PathPartition part{EdgeSet(m), EdgeSet(m), EdgeSet(m), 0};
  for (std::size_t e = 0; e < m; ++e) {
    if (count[e] == 0) continue;
    part.e0.insert(static_cast<EdgeId>(e));
    (count[e] == 1 ? part.e1 : part.e2).insert(static_cast<EdgeId>(e));
  }
  for (const auto& p : paths.paths) {
    int shared = 0;
    for (EdgeId e : p) shared += part.e2.contains(e) ? 1 : 0;
    part.b = std::max(part.b, shared);
  }
  return part;
}

void validate_strategy(const Network& net, const InterdictionStrategy& w) {
  if (w.support.empty()) throw Error(ErrorKind::kBadDistribution, "strategy has empty support");
  double total = 0.0;
  std::set<std::vector<EdgeId>> seen;
  for (const auto& [path, weight] : w.support) {
    if (!std::isfinite(weight) || weight < 0.0) {
      throw Error(ErrorKind::kBadDistribution, "strategy weight must be nonnegative");
    }
    if (!is_simple_path(net, path, net.source(), net.sink())) {
      throw Error(ErrorKind::kBadDistribution, "strategy support contains a non s-t path");
    }
    if (!seen.insert(path).second) {
      throw Error(ErrorKind::kBadDistribution, "strategy support repeats a path");
    }
    total += weight;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorKind::kBadDistribution, "strategy weights sum to " + std::to_string(total));
  }
}

std::vector<double> residual_capacities(const Network& net, const EdgeSet& a) {
  std::vector<double> r = net.capacities();
  a.for_each([&](EdgeId e) { r[static_cast<std::size_t>(e)] -= net.budget(); });
  return r;
}

std::vector<double> residual_capacities(const Network& net, const Flow& f) {
  std::vector<double> r = net.capacities();
  for (std::size_t e = 0; e < r.size(); ++e) r[e] -= f.values[e];
  return r;
}

ThroughputModel::ThroughputModel(const Network& net, UserPaths paths)
    : net_(&net), paths_(normalize_user_paths(net, std::move(paths))) {
  partition_ = partition_user_edges(net, paths_);
  const auto m = static_cast<std::size_t>(net.edge_count());
  load_.assign(m, 0.0);
  users_of_edge_.assign(m, {});
  for (std::size_t i = 0; i < paths_.paths.size(); ++i) {
    total_initial_ += paths_.initial[i];
    for (EdgeId e : paths_.paths[i]) {
      load_[static_cast<std::size_t>(e)] += paths_.initial[i];
      users_of_edge_[static_cast<std::size_t>(e)].push_back(static_cast<int>(i));
    }
  }
}

double ThroughputModel::throughput(std::span<const double> residual) const {
  if (!disjoint()) return throughput_lp(residual);
  double total = 0.0;
  for (std::size_t i = 0; i < paths_.paths.size(); ++i) {
    double flow = paths_.initial[i];
    for (EdgeId e : paths_.paths[i]) flow = std::min(flow, residual[static_cast<std::size_t>(e)]);
    total += std::max(0.0, flow);
  }
  return total;
}

double ThroughputModel::throughput_lp(std::span<const double> residual) const {
  const std::size_t k = paths_.paths.size();
  LinearProgram lp;
  lp.objective.assign(k, 1.0);
  lp.lower.assign(k, 0.0);
  lp.upper = paths_.initial;
  // Rows whose residual covers the full load are implied by the upper bounds.
  partition_.e0.for_each([&](EdgeId e) {
    const auto idx = static_cast<std::size_t>(e);
    if (residual[idx] >= load_[idx]) return;
    std::vector<double> row(k, 0.0);
    for (int i : users_of_edge_[idx]) row[static_cast<std::size_t>(i)] = 1.0;
    lp.rows.push_back(std::move(row));
    lp.senses.push_back(RowSense::kLessEqual);
    lp.rhs.push_back(std::max(0.0, residual[idx]));
  });
  if (lp.rows.empty()) return total_initial_;
  const LpSolution sol = solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw Error(ErrorKind::kNumericalFailure, "throughput LP did not reach an optimum");
  }
  return sol.objective_value;
}

double ThroughputModel::throughput(const EdgeSet& a) const {
  return total_initial_ - lambda(a);
}

double ThroughputModel::throughput(const Flow& f) const {
  const std::vector<double> r = residual_capacities(*net_, f);
  return throughput(std::span<const double>(r));
}

double ThroughputModel::clamp_reduction(double t) const {
  return std::clamp(total_initial_ - t, 0.0, total_initial_);
}

double ThroughputModel::lambda_disjoint(const EdgeSet& a) const {
  // Untouched edges never bind because the initial flows are feasible, so
  // only the interdicted edges on each path matter.
  const double gamma = net_->budget();
  std::vector<std::pair<int, double>> hit;
  a.for_each([&](EdgeId e) {
    for (int i : users_of_edge_[static_cast<std::size_t>(e)]) {
      hit.emplace_back(i, net_->capacity(e) - gamma);
    }
  });
  if (hit.empty()) return 0.0;
  std::sort(hit.begin(), hit.end());
  double reduction = 0.0;
  for (std::size_t j = 0; j < hit.size();) {
    const int i = hit[j].first;
    const double bottleneck = hit[j].second;  // smallest after sort
    while (j < hit.size() && hit[j].first == i) ++j;
    const double lam = paths_.initial[static_cast<std::size_t>(i)];
    reduction += lam - std::clamp(bottleneck, 0.0, lam);
  }
  return std::clamp(reduction, 0.0, total_initial_);
}

double ThroughputModel::lambda(const EdgeSet& a) const {
  if (disjoint()) return lambda_disjoint(a);
  bool binding = false;
  a.for_each([&](EdgeId e) {
    if (net_->capacity(e) - net_->budget() < load_[static_cast<std::size_t>(e)] - kFlowTolerance) {
      binding = true;
    }
  });
  if (!binding) return 0.0;
  const std::vector<double> r = residual_capacities(*net_, a);
  return clamp_reduction(throughput_lp(r));
}

double ThroughputModel::lambda(const Flow& f) const {
  const std::vector<double> r = residual_capacities(*net_, f);
  return clamp_reduction(throughput(std::span<const double>(r)));
}

double ThroughputModel::lambda_path(std::span<const EdgeId> path) const {
  return lambda(EdgeSet(static_cast<std::size_t>(net_->edge_count()), path));
}

double ThroughputModel::lambda_strategy(const InterdictionStrategy& w) const {
  validate_strategy(*net_, w);
  double value = 0.0;
  for (const auto& [path, weight] : w.support) value += weight * lambda_path(path);
  return value;
}

double ThroughputModel::marginal_gain(const EdgeSet& x, const EdgeSet& a) const {
  return lambda(a | x) - lambda(x);
}

double ThroughputModel::lambda_bar(const EdgeSet& a) const {
  if (disjoint()) return lambda_disjoint(a);
  const double gamma = net_->budget();
  std::vector<double> flow = paths_.initial;
  // Phase I: E1 edges outside A have capacity >= λ_i and cannot bind.
  a.for_each([&](EdgeId e) {
    if (!partition_.e1.contains(e)) return;
    for (int i : users_of_edge_[static_cast<std::size_t>(e)]) {
      auto& v = flow[static_cast<std::size_t>(i)];
      v = std::min(v, net_->capacity(e) - gamma);
    }
  });
  // Phase II: E2 edges outside A saturate only when C(e) equals the load,
  // where the factor is 1.
  a.for_each([&](EdgeId e) {
    if (!partition_.e2.contains(e)) return;
    const double residual = net_->capacity(e) - gamma;
    const double l = load_[static_cast<std::size_t>(e)];
    if (l <= 0.0 || residual > l + kFlowTolerance) return;
    const double factor = std::max(0.0, residual) / l;
    for (int i : users_of_edge_[static_cast<std::size_t>(e)]) flow[static_cast<std::size_t>(i)] *= factor;
  });
  double remaining = 0.0;
  for (double v : flow) remaining += std::max(0.0, v);
  return std::clamp(total_initial_ - remaining, 0.0, total_initial_);
}

double throughput_T(const Network& net, const UserPaths& paths, const EdgeSet& a) {
  return ThroughputModel(net, paths).throughput(a);
}

double throughput_T(const Network& net, const UserPaths& paths, const Flow& f) {
  return ThroughputModel(net, paths).throughput(f);
}

double lambda(const Network& net, const UserPaths& paths, const EdgeSet& a) {
  return ThroughputModel(net, paths).lambda(a);
}

double lambda(const Network& net, const UserPaths& paths, const Flow& f) {
  return ThroughputModel(net, paths).lambda(f);
}

double lambda_strategy(const Network& net, const UserPaths& paths, const InterdictionStrategy& w) {
  return ThroughputModel(net, paths).lambda_strategy(w);
}

double marginal_gain(const Network& net, const UserPaths& paths, const EdgeSet& x,
                     const EdgeSet& a) {
  return ThroughputModel(net, paths).marginal_gain(x, a);
}

double lambda_bar(const Network& net, const UserPaths& paths, const EdgeSet& a) {
  return ThroughputModel(net, paths).lambda_bar(a);
}

std::int64_t upper_bound_M(std::span<const UserPaths> candidates, int n0, double scale) {
  double best = 0.0;
  for (const auto& p : candidates) {
    double total = 0.0;
    for (double lam : p.initial) total += lam;
    best = std::max(best, total);
  }
  const auto n = static_cast<std::int64_t>(n0) * n0 + n0;
  return n * static_cast<std::int64_t>(std::ceil(scale * best - 1e-9));
}

}  // namespace flowjam
