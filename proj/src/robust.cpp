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


#include "flowjam/robust.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>

#include "flowjam/errors.hpp"

namespace flowjam {
namespace {

constexpr std::size_t kSurrogateCacheLimit = 1u << 22;

double max_total_initial(const UncertaintySet& u) {
  double best = 0.0;
  for (const auto& p : u.candidates) {
    double total = 0.0;
    for (double lam : p.initial) total += lam;
    best = std::max(best, total);
  }
  return best;
}

std::int64_t ceil_int(double x) { return static_cast<std::int64_t>(std::ceil(x - 1e-9)); }

}  // namespace

std::int64_t scale_reduction(double lambda, std::int64_t scale) {
  return static_cast<std::int64_t>(std::floor(static_cast<double>(scale) * lambda + 1e-9));
}

Integerization integerize(const Network& net, const UncertaintySet& u, double epsilon, int n0,
                          std::optional<std::int64_t> forced_scale, std::optional<int> d) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorKind::kInvalidInput, "epsilon must lie in (0, 1)");
  }
  if (n0 < 1) throw Error(ErrorKind::kInvalidInput, "N0 must be at least 1");
  Integerization intz;
  intz.epsilon = epsilon;
  intz.n = static_cast<std::int64_t>(n0) * n0 + n0;
  const double top = max_total_initial(u);
  intz.m = intz.n * ceil_int(top);
  intz.d = std::max(1, d.value_or(net.node_count()));
  for (const auto& p : u.candidates) {
    intz.b = std::max(intz.b, partition_user_edges(net, p).b);
  }
  if (forced_scale) {
    if (*forced_scale < 1) throw Error(ErrorKind::kInvalidInput, "forced scale must be positive");
    intz.scale = *forced_scale;
  } else {
    const double levels = std::floor(std::log2(static_cast<double>(intz.d))) + 1.0;
    const double m = std::max<double>(2.0, static_cast<double>(intz.m));
    std::int64_t n1 = 2;
    for (int iter = 0; iter < 64; ++iter) {
      const double rhs = 2.0 * (intz.b + 1) * std::log2(static_cast<double>(n1) * m) * levels / epsilon;
      const auto next = static_cast<std::int64_t>(std::ceil(rhs));
      if (next == n1) break;
      n1 = next;
    }
    intz.scale = n1;
  }
  intz.m_scaled = intz.n * ceil_int(static_cast<double>(intz.scale) * top);
  return intz;
}

std::int64_t CoverState::total() const {
  std::int64_t n = 0;
  for (std::int64_t c : counts) n += c;
  return n;
}

std::int64_t CoverState::deficit(std::size_t p) const {
  return std::max<std::int64_t>(0, target - covered[p]);
}

bool CoverState::satisfied() const {
  for (std::size_t p = 0; p < covered.size(); ++p) {
    if (deficit(p) > 0) return false;
  }
  return true;
}

std::int64_t coverage_gain(const CoverState& state, std::span<const std::int64_t> lambda_prime) {
  std::int64_t gain = 0;
  for (std::size_t p = 0; p < state.covered.size(); ++p) {
    const std::int64_t need = state.deficit(p);
    if (need > 0) gain += std::min(need, std::max<std::int64_t>(0, lambda_prime[p]));
  }
  return gain;
}

struct RobustSolver::Caches {
  std::unordered_map<EdgeSet, std::vector<double>, EdgeSetHash> surrogate;
  std::map<std::vector<std::int64_t>, Pick> picks;
};

RobustSolver::RobustSolver(const Network& net, const UncertaintySet& u, const RobustOptions& options)
    : net_(net), options_(options), caches_(std::make_unique<Caches>()) {
  if (u.candidates.empty()) {
    throw Error(ErrorKind::kInvalidInput, "uncertainty set needs at least one candidate");
  }
  models_.reserve(u.candidates.size());
  for (const auto& p : u.candidates) models_.emplace_back(net, p);
  intz_ = integerize(net, u, options.epsilon, options.n0, options.forced_scale, options.d);
  // Λ̄ is monotone, so its value on the full edge set bounds every value the
  // search can see; the +1 absorbs rounding.
  EdgeSet all = net.empty_edge_set();
  for (EdgeId e = 0; e < net.edge_count(); ++e) all.insert(e);
  for (const auto& model : models_) {
    const double scale = static_cast<double>(intz_.scale);
    caps_.push_back(std::min(ceil_int(scale * model.total_initial()),
                             ceil_int(scale * model.lambda_bar(all)) + 1));
  }
}

RobustSolver::~RobustSolver() = default;

std::vector<std::int64_t> RobustSolver::scaled_reductions(std::span<const EdgeId> path) {
  std::vector<std::int64_t> out;
  out.reserve(models_.size());
  for (const auto& model : models_) out.push_back(scale_reduction(model.lambda_path(path), intz_.scale));
  return out;
}

std::int64_t RobustSolver::coverage_gain(const CoverState& state, std::span<const EdgeId> path) {
  const auto lp = scaled_reductions(path);
  return flowjam::coverage_gain(state, lp);
}

double RobustSolver::surrogate_sum(const EdgeSet& a, const std::vector<std::int64_t>& deficits) {
  auto it = caches_->surrogate.find(a);
  if (it == caches_->surrogate.end()) {
    if (caches_->surrogate.size() >= kSurrogateCacheLimit) caches_->surrogate.clear();
    std::vector<double> values;
    values.reserve(models_.size());
    for (const auto& model : models_) values.push_back(model.lambda_bar(a));
    it = caches_->surrogate.emplace(a, std::move(values)).first;
  }
  const double scale = static_cast<double>(intz_.scale);
  double total = 0.0;
  for (std::size_t p = 0; p < models_.size(); ++p) {
    if (deficits[p] > 0) total += std::min(static_cast<double>(deficits[p]), scale * it->second[p]);
  }
  return total;
}

// The surrogate gain only sees deficits through min(deficit, N1·Λ̄) and
// N1·Λ̄ never exceeds the cap, so the selection is a function of the clamped
// deficit vector.
const RobustSolver::Pick& RobustSolver::select(const std::vector<std::int64_t>& clamped) {
  if (auto it = caches_->picks.find(clamped); it != caches_->picks.end()) return it->second;
  const GainFunction gain = [this, &clamped](const EdgeSet& a) { return surrogate_sum(a, clamped); };
  GreedyStats gs;
  const EdgeSet chosen = recursive_greedy(net_, gain, net_.source(), net_.sink(), net_.empty_edge_set(),
                                          options_.greedy.depth, options_.greedy.anchors, &gs);
  ++stats_.greedy_runs;
  stats_.evaluations += gs.evaluations;
  auto path = order_as_path(net_, chosen, net_.source(), net_.sink());
  if (!path) throw Error(ErrorKind::kNotAPath, "greedy returned a non-path edge set");
  Pick pick{*path, scaled_reductions(*path)};
  return caches_->picks.emplace(clamped, std::move(pick)).first->second;
}

CoverState RobustSolver::solve_ilp(std::int64_t kappa) {
  const std::size_t xi = models_.size();
  CoverState state;
  state.target = kappa;
  state.covered.assign(xi, 0);
  std::vector<std::int64_t> clamped(xi);
  while (!state.satisfied()) {
    bool saturated = true;
    for (std::size_t p = 0; p < xi; ++p) {
      clamped[p] = std::min(state.deficit(p), caps_[p]);
      saturated = saturated && state.deficit(p) >= caps_[p];
    }
    const Pick& pick = select(clamped);
    if (flowjam::coverage_gain(state, pick.lambda_prime) == 0) {
      throw Error(ErrorKind::kInfeasibleAtKappa,
                  "no progress possible at kappa " + std::to_string(kappa));
    }
    // While every deficit stays at or above its cap the same pick repeats;
    // take all of those rounds at once.
    std::int64_t repeats = 1;
    if (saturated) {
      std::int64_t extra = std::numeric_limits<std::int64_t>::max();
      for (std::size_t p = 0; p < xi; ++p) {
        if (pick.lambda_prime[p] > 0) {
          extra = std::min(extra, (state.deficit(p) - caps_[p]) / pick.lambda_prime[p]);
        }
      }
      repeats += extra;
    }
    auto it = std::find(state.flows.begin(), state.flows.end(), pick.path);
    if (it == state.flows.end()) {
      state.flows.push_back(pick.path);
      state.counts.push_back(repeats);
    } else {
      state.counts[static_cast<std::size_t>(it - state.flows.begin())] += repeats;
    }
    for (std::size_t p = 0; p < xi; ++p) state.covered[p] += repeats * pick.lambda_prime[p];
  }
  return state;
}

std::vector<std::int64_t> RobustSolver::kappa_grid() const {
  std::vector<std::int64_t> grid;
  const std::int64_t top = intz_.m_scaled;
  if (options_.grid == KappaGrid::kFull) {
    for (std::int64_t k = 1; k <= top; ++k) grid.push_back(k);
    return grid;
  }
  for (std::int64_t k = 1; k <= top;) {
    grid.push_back(k);
    k = std::max(k + 1, static_cast<std::int64_t>(std::floor(static_cast<double>(k) * (1.0 + options_.epsilon))));
  }
  if (!grid.empty() && grid.back() != top) grid.push_back(top);
  return grid;
}

RobustResult robust_interdict(const Network& net, const UncertaintySet& u,
                              const RobustOptions& options) {
  RobustSolver solver(net, u, options);
  RobustResult result;
  result.integerization = solver.integerization();
  std::optional<CoverState> best;
  std::uint64_t examined = 0;
  std::uint64_t feasible = 0;
  for (std::int64_t kappa : solver.kappa_grid()) {
    ++examined;
    CoverState state;
    try {
      state = solver.solve_ilp(kappa);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kInfeasibleAtKappa) throw;
      continue;
    }
    ++feasible;
    // κ/N > κ*/N*, compared exactly in integers.
    if (!best || static_cast<__int128>(kappa) * best->total() >
                     static_cast<__int128>(best->target) * state.total()) {
      best = std::move(state);
    }
  }
  result.stats = solver.stats();
  result.stats.kappas_examined = examined;
  result.stats.kappas_feasible = feasible;

  if (!best) {
    result.degenerate = true;
    result.strategy.support.push_back({*shortest_path(net, net.source(), net.sink()), 1.0});
  } else {
    result.kappa = best->target;
    result.n_kappa = best->total();
    const double n = static_cast<double>(result.n_kappa);
    for (std::size_t i = 0; i < best->flows.size(); ++i) {
      result.strategy.support.push_back({best->flows[i], static_cast<double>(best->counts[i]) / n});
    }
  }
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& model : solver.models()) {
    double value = 0.0;
    for (const auto& [path, weight] : result.strategy.support) value += weight * model.lambda_path(path);
    worst = std::min(worst, value);
  }
  result.worst_case = std::max(0.0, worst);
  return result;
}

double worst_case_reduction(const Network& net, const UncertaintySet& u,
                            const InterdictionStrategy& w) {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& p : u.candidates) worst = std::min(worst, lambda_strategy(net, p, w));
  return worst;
}

double robust_guarantee(int n0, int b, std::int64_t m, int d) {
  const double log_m = std::log2(std::max<double>(2.0, static_cast<double>(m)));
  const double levels = std::ceil(std::log2(std::max(1.0, static_cast<double>(d)))) + 1.0;
  return static_cast<double>(n0) / ((n0 + 1.0) * (b + 1.0) * log_m * levels);
}

}  // namespace flowjam
