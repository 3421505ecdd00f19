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


#include "flowjam/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>

#include "flowjam/errors.hpp"

namespace flowjam {
namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr double kCostTolerance = 1e-10;
constexpr std::size_t kMaxPivots = 200000;

// Original variable j equals offset + sum(coef * column) over its parts.
struct VariableMap {
  double offset = 0.0;
  std::vector<std::pair<std::size_t, double>> parts;
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cols_(cols), cells_(rows, std::vector<double>(cols + 1, 0.0)), basis_(rows, 0) {}

  std::vector<double>& row(std::size_t i) { return cells_[i]; }
  double& rhs(std::size_t i) { return cells_[i][cols_]; }
  std::size_t rows() const { return cells_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c, std::vector<double>& objective_row) {
    auto& pr = cells_[r];
    const double p = pr[c];
    for (double& x : pr) x /= p;
    pr[c] = 1.0;
    auto eliminate = [&](std::vector<double>& target) {
      const double factor = target[c];
      if (factor == 0.0) return;
      for (std::size_t j = 0; j <= cols_; ++j) target[j] -= factor * pr[j];
      target[c] = 0.0;
    };
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (i != r) eliminate(cells_[i]);
    }
    eliminate(objective_row);
    basis_[r] = c;
  }

  // objective_row[j] = c_B . column_j - cost_j; objective_row[cols] = c_B . rhs.
  std::vector<double> objective_row(const std::vector<double>& cost) const {
    std::vector<double> out(cols_ + 1, 0.0);
    for (std::size_t j = 0; j < cols_; ++j) out[j] = -cost[j];
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) out[j] += cb * cells_[i][j];
    }
    return out;
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<double>> cells_;
  std::vector<std::size_t> basis_;
};

enum class PhaseResult { kOptimal, kUnbounded };

// Bland's rule: lowest-index improving column enters, lowest-index basic
// variable leaves among ratio ties.
PhaseResult run_simplex(Tableau& t, std::vector<double>& obj, const std::vector<bool>& may_enter) {
  for (std::size_t iter = 0; iter < kMaxPivots; ++iter) {
    std::size_t enter = t.cols();
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (may_enter[j] && obj[j] < -kCostTolerance) {
        enter = j;
        break;
      }
    }
    if (enter == t.cols()) return PhaseResult::kOptimal;

    std::size_t leave = t.rows();
    double best_ratio = 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.row(i)[enter];
      if (a <= kPivotTolerance) continue;
      const double ratio = std::max(0.0, t.rhs(i)) / a;
      if (leave == t.rows() || ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && t.basis()[i] < t.basis()[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == t.rows()) return PhaseResult::kUnbounded;
    t.pivot(leave, enter, obj);
  }
  throw Error(ErrorKind::kNumericalFailure, "simplex pivot limit reached");
}

void check_well_formed(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  const std::size_t m = lp.rows.size();
  if (lp.senses.size() != m || lp.rhs.size() != m) {
    throw Error(ErrorKind::kInvalidInput, "row count mismatch between matrix, senses and rhs");
  }
  if ((!lp.lower.empty() && lp.lower.size() != n) || (!lp.upper.empty() && lp.upper.size() != n)) {
    throw Error(ErrorKind::kInvalidInput, "bound vector length mismatch");
  }
  auto finite = [](double x) { return std::isfinite(x); };
  if (!std::all_of(lp.objective.begin(), lp.objective.end(), finite) ||
      !std::all_of(lp.rhs.begin(), lp.rhs.end(), finite)) {
    throw Error(ErrorKind::kInvalidInput, "non-finite objective or rhs coefficient");
  }
  for (const auto& row : lp.rows) {
    if (row.size() != n) throw Error(ErrorKind::kInvalidInput, "row length mismatch");
    if (!std::all_of(row.begin(), row.end(), finite)) {
      throw Error(ErrorKind::kInvalidInput, "non-finite constraint coefficient");
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = lp.lower.empty() ? 0.0 : lp.lower[j];
    const double hi = lp.upper.empty() ? kInfinity : lp.upper[j];
    if (std::isnan(lo) || std::isnan(hi) || lo == kInfinity || hi == -kInfinity) {
      throw Error(ErrorKind::kInvalidInput, "invalid bound on variable " + std::to_string(j));
    }
  }
}

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  check_well_formed(lp);
  const std::size_t n = lp.objective.size();
  const std::size_t m = lp.rows.size();
  LpSolution sol;

  // Shift and split variables so every tableau column is >= 0; finite upper
  // bounds on shifted variables become extra <= rows.
  std::vector<VariableMap> vars(n);
  std::vector<std::pair<std::size_t, double>> bound_limits;
  std::size_t columns = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = lp.lower.empty() ? 0.0 : lp.lower[j];
    const double hi = lp.upper.empty() ? kInfinity : lp.upper[j];
    if (lo > hi) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    if (std::isfinite(lo)) {
      vars[j].offset = lo;
      vars[j].parts.emplace_back(columns, 1.0);
      if (std::isfinite(hi)) bound_limits.emplace_back(columns, hi - lo);
      ++columns;
    } else if (std::isfinite(hi)) {
      vars[j].offset = hi;
      vars[j].parts.emplace_back(columns++, -1.0);
    } else {
      vars[j].parts.emplace_back(columns++, 1.0);
      vars[j].parts.emplace_back(columns++, -1.0);
    }
  }
  const std::size_t structural = columns;
  const std::size_t total_rows = m + bound_limits.size();

  std::vector<std::vector<double>> a(total_rows, std::vector<double>(structural, 0.0));
  std::vector<double> b(total_rows, 0.0);
  std::vector<RowSense> sense(total_rows, RowSense::kLessEqual);
  for (std::size_t i = 0; i < m; ++i) {
    b[i] = lp.rhs[i];
    sense[i] = lp.senses[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double coef = lp.rows[i][j];
      if (coef == 0.0) continue;
      b[i] -= coef * vars[j].offset;
      for (const auto& [col, sign] : vars[j].parts) a[i][col] += coef * sign;
    }
  }
  for (std::size_t k = 0; k < bound_limits.size(); ++k) {
    a[m + k][bound_limits[k].first] = 1.0;
    b[m + k] = bound_limits[k].second;
  }
  std::vector<double> flip(total_rows, 1.0);
  for (std::size_t i = 0; i < total_rows; ++i) {
    if (b[i] < 0.0) {
      flip[i] = -1.0;
      b[i] = -b[i];
      for (double& x : a[i]) x = -x;
      if (sense[i] == RowSense::kLessEqual) {
        sense[i] = RowSense::kGreaterEqual;
      } else if (sense[i] == RowSense::kGreaterEqual) {
        sense[i] = RowSense::kLessEqual;
      }
    }
  }

  // Column layout: structural | slack or surplus per inequality | artificials.
  std::vector<std::size_t> slack_col(total_rows, SIZE_MAX);
  std::vector<std::size_t> initial_col(total_rows, 0);
  std::size_t cols = structural;
  for (std::size_t i = 0; i < total_rows; ++i) {
    if (sense[i] != RowSense::kEqual) slack_col[i] = cols++;
  }
  const std::size_t first_artificial = cols;
  for (std::size_t i = 0; i < total_rows; ++i) {
    initial_col[i] = sense[i] == RowSense::kLessEqual ? slack_col[i] : cols++;
  }

  Tableau t(total_rows, cols);
  for (std::size_t i = 0; i < total_rows; ++i) {
    auto& r = t.row(i);
    std::copy(a[i].begin(), a[i].end(), r.begin());
    if (slack_col[i] != SIZE_MAX) r[slack_col[i]] = sense[i] == RowSense::kLessEqual ? 1.0 : -1.0;
    r[initial_col[i]] = 1.0;
    t.rhs(i) = b[i];
    t.basis()[i] = initial_col[i];
  }

  std::vector<bool> may_enter(cols, true);
  if (first_artificial < cols) {
    std::vector<double> phase1_cost(cols, 0.0);
    for (std::size_t j = first_artificial; j < cols; ++j) phase1_cost[j] = -1.0;
    std::vector<double> obj = t.objective_row(phase1_cost);
    run_simplex(t, obj, may_enter);
    double scale = 1.0;
    for (double x : b) scale = std::max(scale, std::abs(x));
    if (obj[cols] < -1e-9 * scale) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    // Pivot zero-valued artificials out of the basis where possible.
    for (std::size_t i = 0; i < total_rows; ++i) {
      if (t.basis()[i] < first_artificial) continue;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (std::abs(t.row(i)[j]) > kPivotTolerance) {
          t.pivot(i, j, obj);
          break;
        }
      }
    }
    for (std::size_t j = first_artificial; j < cols; ++j) may_enter[j] = false;
  }

  std::vector<double> cost(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& [col, sign] : vars[j].parts) cost[col] += lp.objective[j] * sign;
  }
  std::vector<double> obj = t.objective_row(cost);
  if (run_simplex(t, obj, may_enter) == PhaseResult::kUnbounded) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }

  std::vector<double> column_value(cols, 0.0);
  for (std::size_t i = 0; i < total_rows; ++i) column_value[t.basis()[i]] = std::max(0.0, t.rhs(i));
  sol.status = LpStatus::kOptimal;
  sol.primal.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double x = vars[j].offset;
    for (const auto& [col, sign] : vars[j].parts) x += sign * column_value[col];
    sol.primal[j] = x;
  }
  sol.objective_value = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective_value += lp.objective[j] * sol.primal[j];

  // y = c_B B^-1, read from the columns that formed the initial identity.
  sol.dual.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double y = 0.0;
    for (std::size_t r = 0; r < total_rows; ++r) y += cost[t.basis()[r]] * t.row(r)[initial_col[i]];
    sol.dual[i] = flip[i] * y;
  }
  sol.reduced_costs = lp.objective;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) sol.reduced_costs[j] -= lp.rows[i][j] * sol.dual[i];
  }

  for (std::size_t i = 0; i < m; ++i) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) lhs += lp.rows[i][j] * sol.primal[j];
    const double tol = kLpFeasibilityTolerance * (1.0 + std::abs(lp.rhs[i]));
    const bool ok = (lp.senses[i] == RowSense::kLessEqual && lhs <= lp.rhs[i] + tol) ||
                    (lp.senses[i] == RowSense::kGreaterEqual && lhs >= lp.rhs[i] - tol) ||
                    (lp.senses[i] == RowSense::kEqual && std::abs(lhs - lp.rhs[i]) <= tol);
    if (!ok) {
      throw Error(ErrorKind::kNumericalFailure,
                  "row " + std::to_string(i) + " violated after simplex termination");
    }
  }
  return sol;
}

double dual_objective(const LinearProgram& lp, const LpSolution& sol) {
  double value = 0.0;
  for (std::size_t i = 0; i < lp.rhs.size(); ++i) value += lp.rhs[i] * sol.dual[i];
  for (std::size_t j = 0; j < sol.reduced_costs.size(); ++j) {
    const double d = sol.reduced_costs[j];
    const double lo = lp.lower.empty() ? 0.0 : lp.lower[j];
    const double hi = lp.upper.empty() ? kInfinity : lp.upper[j];
    if (d > 0.0 && std::isfinite(hi)) {
      value += d * hi;
    } else if (d < 0.0 && std::isfinite(lo)) {
      value += d * lo;
    } else if (d != 0.0) {
      // Sign of d points at an infinite bound; only roundoff can get here.
      value += d * sol.primal[j];
    }
  }
  return value;
}

}  // namespace flowjam
