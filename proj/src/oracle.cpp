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


#include "flowjam/oracle.hpp"

#include <algorithm>

#include "flowjam/errors.hpp"
#include "flowjam/lp.hpp"

namespace flowjam {
namespace {

bool enumerate_or_truncate(const Network& net, std::size_t cap,
                           std::vector<std::vector<EdgeId>>& paths, OracleReport& report) {
  if (cap < 1) throw Error(ErrorKind::kInvalidInput, "path cap must be at least 1");
  try {
    paths = enumerate_st_paths(net, cap);
  } catch (const PathBudgetExceeded& e) {
    report.truncated = true;
    report.paths_enumerated = e.reached();
    return false;
  }
  report.paths_enumerated = paths.size();
  return true;
}

std::vector<EdgeId> sorted_copy(std::vector<EdgeId> path) {
  std::sort(path.begin(), path.end());
  return path;
}

}  // namespace

OracleReport optimal_pure_deterministic(const ThroughputModel& model, std::size_t cap) {
  const Network& net = model.network();
  OracleReport report;
  std::vector<std::vector<EdgeId>> paths;
  if (!enumerate_or_truncate(net, cap, paths, report)) return report;

  double best = -1.0;
  for (const auto& p : paths) {
    const double value = model.lambda_path(p);
    const bool better = value > best + 1e-12;
    const bool tie = !better && value >= best - 1e-12;
    if (better || (tie && sorted_copy(p) < sorted_copy(report.path))) {
      best = std::max(best, value);
      report.path = p;
    }
  }
  report.optimal_value = best;
  report.strategy.support = {{report.path, 1.0}};
  return report;
}

OracleReport optimal_pure_deterministic(const Network& net, const UserPaths& paths, std::size_t cap) {
  return optimal_pure_deterministic(ThroughputModel(net, paths), cap);
}

OracleReport optimal_robust_lp(const Network& net, const UncertaintySet& u, std::size_t cap) {
  OracleReport report;
  std::vector<std::vector<EdgeId>> paths;
  if (!enumerate_or_truncate(net, cap, paths, report)) return report;
  if (u.candidates.empty()) throw Error(ErrorKind::kInvalidInput, "empty uncertainty set");

  const std::size_t k = paths.size();
  const std::size_t xi = u.candidates.size();
  LinearProgram lp;
  // Variables: w_0 … w_{k-1}, then z.
  lp.objective.assign(k + 1, 0.0);
  lp.objective[k] = 1.0;
  lp.lower.assign(k + 1, 0.0);
  lp.lower[k] = -kInfinity;
  lp.upper.assign(k + 1, kInfinity);
  for (std::size_t p = 0; p < xi; ++p) {
    const ThroughputModel model(net, u.candidates[p]);
    std::vector<double> row(k + 1, 0.0);
    for (std::size_t i = 0; i < k; ++i) row[i] = model.lambda_path(paths[i]);
    row[k] = -1.0;
    lp.rows.push_back(std::move(row));
    lp.senses.push_back(RowSense::kGreaterEqual);
    lp.rhs.push_back(0.0);
  }
  std::vector<double> simplex_row(k + 1, 1.0);
  simplex_row[k] = 0.0;
  lp.rows.push_back(std::move(simplex_row));
  lp.senses.push_back(RowSense::kEqual);
  lp.rhs.push_back(1.0);

  const LpSolution sol = solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw Error(ErrorKind::kNumericalFailure, "robust LP did not reach an optimum");
  }
  report.optimal_value = sol.objective_value;
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) total += std::max(0.0, sol.primal[i]);
  for (std::size_t i = 0; i < k; ++i) {
    if (sol.primal[i] > 1e-12) report.strategy.support.push_back({paths[i], sol.primal[i] / total});
  }
  return report;
}

}  // namespace flowjam
