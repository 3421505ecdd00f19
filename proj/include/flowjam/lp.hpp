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


#ifndef FLOWJAM_LP_HPP_
#define FLOWJAM_LP_HPP_

#include <limits>
#include <vector>

namespace flowjam {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

// maximize objective . x  subject to  rows[i] . x (sense[i]) rhs[i],
// lower[j] <= x[j] <= upper[j].  lower may be -kInfinity (free below) and
// upper may be kInfinity. Empty bound vectors mean [0, +inf) for every
// variable.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<RowSense> senses;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> primal;
  // One multiplier per row: >= 0 for <= rows, <= 0 for >= rows.
  std::vector<double> dual;
  // objective - rows^T dual, per variable.
  std::vector<double> reduced_costs;
  double objective_value = 0.0;
};

// Residual tolerance on the reported primal.
inline constexpr double kLpFeasibilityTolerance = 1e-7;

// Dense two-phase primal simplex with Bland's rule. Throws
// Error(kInvalidInput) on malformed programs and Error(kNumericalFailure)
// when the optimal primal violates a constraint by more than
// kLpFeasibilityTolerance.
LpSolution solve(const LinearProgram& lp);

// Dual objective rhs . dual plus the bound terms implied by reduced_costs;
// equals objective_value at optimality.
double dual_objective(const LinearProgram& lp, const LpSolution& sol);

}  // namespace flowjam

#endif  // FLOWJAM_LP_HPP_
