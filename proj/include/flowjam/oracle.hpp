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


#ifndef FLOWJAM_ORACLE_HPP_
#define FLOWJAM_ORACLE_HPP_

#include <cstddef>
#include <vector>

#include "flowjam/network.hpp"
#include "flowjam/robust.hpp"
#include "flowjam/throughput.hpp"

namespace flowjam {

inline constexpr std::size_t kDefaultPathCap = 5000;

// Exhaustive reference solution. When the s-t path count exceeds the cap the
// report comes back with truncated = true and no optimum.
struct OracleReport {
  double optimal_value = 0.0;
  std::vector<EdgeId> path;           // deterministic optimum
  InterdictionStrategy strategy;      // robust optimum (point mass for deterministic)
  std::size_t paths_enumerated = 0;
  bool truncated = false;
};

// Best single s-t path by true Λ; ties go to the lexicographically smallest
// edge set.
OracleReport optimal_pure_deterministic(const ThroughputModel& model,
                                        std::size_t cap = kDefaultPathCap);
OracleReport optimal_pure_deterministic(const Network& net, const UserPaths& paths,
                                        std::size_t cap = kDefaultPathCap);

// max z s.t. Σ_i w_i Λ(f_i, P) >= z for every P, Σ w = 1, w >= 0, over all
// single-path flows.
OracleReport optimal_robust_lp(const Network& net, const UncertaintySet& u,
                               std::size_t cap = kDefaultPathCap);

}  // namespace flowjam

#endif  // FLOWJAM_ORACLE_HPP_
