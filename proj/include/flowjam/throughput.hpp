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


#ifndef FLOWJAM_THROUGHPUT_HPP_
#define FLOWJAM_THROUGHPUT_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "flowjam/edge_set.hpp"
#include "flowjam/network.hpp"

namespace flowjam {

// User paths with their initial flow values. Paths are stored as ordered edge
// lists; normalize_user_paths() puts arbitrary edge orders into path order.
struct UserPaths {
  std::vector<std::vector<EdgeId>> paths;
  std::vector<double> initial;
};

// Validates paths (simple, connected, in range) and initial values
// (nonnegative, edgewise feasible within kFlowTolerance) and returns a copy
// with every path in traversal order. Throws Error(kInvalidInput).
UserPaths normalize_user_paths(const Network& net, UserPaths paths);

struct PathPartition {
  EdgeSet e0;  // on at least one user path
  EdgeSet e1;  // on exactly one
  EdgeSet e2;  // on two or more
  int b = 0;   // max over paths of |e2 ∩ p|
};

PathPartition partition_user_edges(const Network& net, const UserPaths& paths);

// One entry of a mixed interdiction strategy: a single-path s-t flow of
// value γ, identified by its ordered edge list.
struct WeightedPath {
  std::vector<EdgeId> path;
  double weight = 0.0;
};

struct InterdictionStrategy {
  std::vector<WeightedPath> support;
};

// Weights nonnegative and summing to 1 within 1e-9, support paths distinct
// simple s-t paths. Throws Error(kBadDistribution).
void validate_strategy(const Network& net, const InterdictionStrategy& w);

std::vector<double> residual_capacities(const Network& net, const EdgeSet& a);
std::vector<double> residual_capacities(const Network& net, const Flow& f);

// Evaluates T, Λ and Λ̄ for one user-path set. Holds a reference to the
// network, which must outlive the model. All members are const and safe to
// call concurrently.
class ThroughputModel {
 public:
  ThroughputModel(const Network& net, UserPaths paths);

  const Network& network() const { return *net_; }
  const UserPaths& user_paths() const { return paths_; }
  const PathPartition& partition() const { return partition_; }
  bool disjoint() const { return partition_.e2.empty(); }
  double total_initial() const { return total_initial_; }
  // Σ λ_j over the user paths through e.
  double load(EdgeId e) const { return load_[static_cast<std::size_t>(e)]; }

  // Max-flow throughput under arbitrary residual capacities: closed form on
  // disjoint paths, otherwise the path LP restricted to edges whose residual
  // is below their load.
  double throughput(std::span<const double> residual) const;
  // Always goes through the LP, for cross-checking the closed form.
  double throughput_lp(std::span<const double> residual) const;

  double throughput(const EdgeSet& a) const;
  double throughput(const Flow& f) const;

  double lambda(const EdgeSet& a) const;
  double lambda(const Flow& f) const;
  double lambda_path(std::span<const EdgeId> path) const;
  double lambda_strategy(const InterdictionStrategy& w) const;

  // Λ_X(A) = Λ(A ∪ X) − Λ(X).
  double marginal_gain(const EdgeSet& x, const EdgeSet& a) const;

  // Two-phase surrogate; equals lambda() when the paths are disjoint.
  double lambda_bar(const EdgeSet& a) const;

 private:
  double lambda_disjoint(const EdgeSet& a) const;
  double clamp_reduction(double throughput) const;

  const Network* net_;
  UserPaths paths_;
  PathPartition partition_;
  double total_initial_ = 0.0;
  std::vector<double> load_;
  std::vector<std::vector<int>> users_of_edge_;
};

double throughput_T(const Network& net, const UserPaths& paths, const EdgeSet& a);
double throughput_T(const Network& net, const UserPaths& paths, const Flow& f);
double lambda(const Network& net, const UserPaths& paths, const EdgeSet& a);
double lambda(const Network& net, const UserPaths& paths, const Flow& f);
double lambda_strategy(const Network& net, const UserPaths& paths, const InterdictionStrategy& w);
double marginal_gain(const Network& net, const UserPaths& paths, const EdgeSet& x,
                     const EdgeSet& a);
double lambda_bar(const Network& net, const UserPaths& paths, const EdgeSet& a);

// N · ceil(scale · max_P Σλ) with N = n0² + n0.
std::int64_t upper_bound_M(std::span<const UserPaths> candidates, int n0, double scale = 1.0);

}  // namespace flowjam

#endif  // FLOWJAM_THROUGHPUT_HPP_
