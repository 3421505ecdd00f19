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


#ifndef FLOWJAM_ROBUST_HPP_
#define FLOWJAM_ROBUST_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "flowjam/greedy.hpp"
#include "flowjam/network.hpp"
#include "flowjam/throughput.hpp"

namespace flowjam {

struct UncertaintySet {
  std::vector<UserPaths> candidates;
};

struct Integerization {
  std::int64_t scale = 1;  // N1
  double epsilon = 0.5;
  std::int64_t n = 0;         // N0² + N0
  std::int64_t m = 0;         // N · ceil(max_P Σλ), unscaled
  std::int64_t m_scaled = 0;  // N · ceil(N1 · max_P Σλ): the κ range
  int b = 0;                  // max over candidates
  int d = 1;                  // path-length bound used in the fixed point
};

// floor(N1 · λ), with a 1e-9 allowance so exact products are not rounded down.
std::int64_t scale_reduction(double lambda, std::int64_t scale);

// Smallest fixed point of N1 = ceil(2(b+1)·log2(N1·M)·(floor(log2 d)+1)/ε),
// iterated from N1 = 2. d defaults to the node count. forced_scale bypasses
// the iteration (N1 is then the given value).
Integerization integerize(const Network& net, const UncertaintySet& u, double epsilon, int n0,
                          std::optional<std::int64_t> forced_scale = std::nullopt,
                          std::optional<int> d = std::nullopt);

struct CoverState {
  std::vector<std::vector<EdgeId>> flows;  // distinct selected s-t paths
  std::vector<std::int64_t> counts;        // x_i
  std::vector<std::int64_t> covered;       // Σ_j x_j Λ'(f_j, P) per candidate
  std::int64_t target = 0;                 // κ

  std::int64_t total() const;  // N_κ
  std::int64_t deficit(std::size_t p) const;
  bool satisfied() const;
};

// Σ over unsatisfied candidates of min(deficit, Λ'(f, P)).
std::int64_t coverage_gain(const CoverState& state, std::span<const std::int64_t> lambda_prime);

enum class KappaGrid { kFull, kGeometric };

struct RobustOptions {
  GreedyConfig greedy{3, 2};
  double epsilon = 0.5;
  int n0 = 8;
  KappaGrid grid = KappaGrid::kFull;
  std::optional<std::int64_t> forced_scale;
  std::optional<int> d;
};

struct RobustStats {
  std::uint64_t greedy_runs = 0;
  std::uint64_t evaluations = 0;
  std::uint64_t kappas_examined = 0;
  std::uint64_t kappas_feasible = 0;
};

// Shared state for the robust solver on one instance: the per-candidate throughput
// models, the integerization, and caches reused across κ values.
class RobustSolver {
 public:
  RobustSolver(const Network& net, const UncertaintySet& u, const RobustOptions& options);
  ~RobustSolver();

  const Integerization& integerization() const { return intz_; }
  const std::vector<ThroughputModel>& models() const { return models_; }
  RobustStats stats() const { return stats_; }

  // Λ'(path, P) for every candidate P.
  std::vector<std::int64_t> scaled_reductions(std::span<const EdgeId> path);
  std::int64_t coverage_gain(const CoverState& state, std::span<const EdgeId> path);

  // Greedy multiset multicover for ILP(κ). Throws Error(kInfeasibleAtKappa)
  // when the selected path makes no progress.
  CoverState solve_ilp(std::int64_t kappa);

  std::vector<std::int64_t> kappa_grid() const;

 private:
  struct Pick {
    std::vector<EdgeId> path;
    std::vector<std::int64_t> lambda_prime;
  };
  const Pick& select(const std::vector<std::int64_t>& clamped_deficits);
  double surrogate_sum(const EdgeSet& a, const std::vector<std::int64_t>& deficits);

  const Network& net_;
  RobustOptions options_;
  std::vector<ThroughputModel> models_;
  Integerization intz_;
  std::vector<std::int64_t> caps_;
  RobustStats stats_;
  struct Caches;
  std::unique_ptr<Caches> caches_;
};

struct RobustResult {
  InterdictionStrategy strategy;
  double worst_case = 0.0;  // min_P Λ(w, P), unscaled
  std::int64_t kappa = 0;
  std::int64_t n_kappa = 0;
  bool degenerate = false;  // no κ was feasible
  Integerization integerization;
  RobustStats stats;
};

// Runs the covering greedy for each κ on the grid, keeping the solution with
// the largest κ/N_κ (ties to the smaller κ). When no κ is feasible the result
// is a point mass on the shortest s-t path with degenerate = true.
RobustResult robust_interdict(const Network& net, const UncertaintySet& u,
                              const RobustOptions& options);

// min over candidates of the expected reduction under w.
double worst_case_reduction(const Network& net, const UncertaintySet& u,
                            const InterdictionStrategy& w);

// N0 / ((N0+1)(b+1)·log2 M·(ceil(log2 d)+1)).
double robust_guarantee(int n0, int b, std::int64_t m, int d);

}  // namespace flowjam

#endif  // FLOWJAM_ROBUST_HPP_
