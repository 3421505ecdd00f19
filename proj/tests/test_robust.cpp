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


#include <cmath>
#include <numeric>

#include "doctest.h"
#include "flowjam/errors.hpp"
#include "flowjam/oracle.hpp"
#include "flowjam/robust.hpp"
#include "testkit.hpp"

using namespace flowjam;
namespace tk = flowjam::testkit;

namespace {

RobustOptions small_options(KappaGrid grid = KappaGrid::kFull) {
  RobustOptions o;
  o.greedy = GreedyConfig{3, 2};
  o.n0 = 2;
  o.epsilon = 0.5;
  o.grid = grid;
  return o;
}

}  // namespace

TEST_SUITE("robust") {

TEST_CASE("scaled reductions") {
  CHECK(scale_reduction(2.7, 10) == 27);
  CHECK(scale_reduction(3.0, 1) == 3);
  CHECK(scale_reduction(0.0, 7) == 0);
  // Integral Λ with a forced unit scale is unchanged.
  const Network net = tk::diamond_network();
  RobustOptions o = small_options();
  o.forced_scale = 1;
  RobustSolver solver(net, UncertaintySet{{tk::diamond_paths()}}, o);
  CHECK(solver.scaled_reductions(tk::diamond_flow_path()) == std::vector<std::int64_t>{4});
  CHECK(solver.scaled_reductions(tk::diamond_f2()) == std::vector<std::int64_t>{3});
}

TEST_CASE("integerization fixed point") {
  // b = 1 (two paths share the middle edge), Σλ = 9, N0 = 2 so M = 54, d = 8.
  const Network net(4, {{0, 1}, {1, 2}, {2, 3}}, {9.0, 9.0, 9.0}, 0, 3, 1.0);
  const UncertaintySet u{{UserPaths{{{0, 1}, {1, 2}}, {4.5, 4.5}}}};
  const Integerization intz = integerize(net, u, 0.5, 2, std::nullopt, 8);
  CHECK(intz.n == 6);
  CHECK(intz.m == 54);
  CHECK(intz.b == 1);
  auto rhs = [](double n1) { return 2.0 * 2.0 * std::log2(n1 * 54.0) * (std::floor(std::log2(8.0)) + 1.0) / 0.5; };
  // Independent iteration from 2.
  double n1 = 2.0;
  for (int i = 0; i < 100; ++i) n1 = std::ceil(rhs(n1));
  CHECK(static_cast<double>(intz.scale) == n1);
  CHECK(static_cast<double>(intz.scale) >= rhs(static_cast<double>(intz.scale)));
  CHECK(static_cast<double>(intz.scale) - 1.0 < rhs(static_cast<double>(intz.scale)));
  CHECK(intz.m_scaled == 6 * static_cast<std::int64_t>(std::ceil(static_cast<double>(intz.scale) * 9.0)));

  CHECK_THROWS_AS(integerize(net, u, 0.0, 2), Error);
  CHECK_THROWS_AS(integerize(net, u, 1.0, 2), Error);
  CHECK_THROWS_AS(integerize(net, u, 0.5, 0), Error);
}

TEST_CASE("coverage gain") {
  CoverState done;
  done.target = 5;
  done.covered = {5, 7};
  const std::vector<std::int64_t> big{9, 9};
  CHECK(coverage_gain(done, big) == 0);

  CoverState one;
  one.target = 3;
  one.covered = {0};
  const std::vector<std::int64_t> five{5};
  CHECK(coverage_gain(one, five) == 3);

  CoverState two;
  two.target = 4;
  two.covered = {2, 0};
  const std::vector<std::int64_t> lp{3, 1};
  CHECK(coverage_gain(two, lp) == 3);
  CHECK(two.deficit(0) == 2);
  CHECK(two.deficit(1) == 4);
  CHECK_FALSE(two.satisfied());
}

TEST_CASE("coverage gain is monotone submodular") {
  const tk::SuiteReport rep = tk::coverage_submodular_suite(150, 9);
  INFO(rep.first_failure);
  CHECK(rep.ok());
}

TEST_CASE("single candidate covered by one flow") {
  const Network net = tk::diamond_network();
  RobustOptions o = small_options();
  o.forced_scale = 1;
  RobustSolver solver(net, UncertaintySet{{tk::diamond_paths()}}, o);
  const CoverState s = solver.solve_ilp(4);
  CHECK(s.total() == 1);
  CHECK(s.covered == std::vector<std::int64_t>{4});
  const CoverState t = solver.solve_ilp(8);
  CHECK(t.total() == 2);
}

TEST_CASE("no reducible candidate is infeasible at every kappa") {
  const Network net(3, {{0, 1}, {1, 2}}, {10.0, 10.0}, 0, 2, 1.0);
  const UncertaintySet u{{UserPaths{{{0, 1}}, {1.0}}}};
  RobustSolver solver(net, u, small_options());
  try {
    solver.solve_ilp(1);
    FAIL("expected InfeasibleAtKappa");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInfeasibleAtKappa);
  }
  const RobustResult r = robust_interdict(net, u, small_options(KappaGrid::kGeometric));
  CHECK(r.degenerate);
  CHECK(r.worst_case == 0.0);
  REQUIRE(r.strategy.support.size() == 1);
  CHECK(r.strategy.support[0].weight == 1.0);
}

TEST_CASE("kappa grids") {
  const Network net = tk::diamond_network();
  RobustOptions o = small_options();
  o.forced_scale = 3;
  RobustSolver full(net, tk::diamond_uncertainty(), o);
  const auto g = full.kappa_grid();
  const std::int64_t top = full.integerization().m_scaled;
  CHECK(top == 6 * 18);
  REQUIRE(g.size() == static_cast<std::size_t>(top));
  CHECK(g.front() == 1);
  CHECK(g.back() == top);
  o.grid = KappaGrid::kGeometric;
  RobustSolver geo(net, tk::diamond_uncertainty(), o);
  const auto h = geo.kappa_grid();
  CHECK(h.front() == 1);
  CHECK(h.back() == top);
  for (std::size_t i = 1; i < h.size(); ++i) {
    CHECK(h[i] > h[i - 1]);
    if (i + 1 < h.size()) CHECK(static_cast<double>(h[i]) <= std::max<double>(h[i - 1] + 1, h[i - 1] * 1.5));
  }
}

TEST_CASE("worst case reduction") {
  const Network net = tk::diamond_network();
  const InterdictionStrategy mixed{{{tk::diamond_f1(), 1.0 / 3.0}, {tk::diamond_f2(), 2.0 / 3.0}}};
  CHECK(worst_case_reduction(net, tk::diamond_uncertainty(), mixed) == doctest::Approx(8.0 / 3.0));
  const UncertaintySet single{{tk::diamond_paths()}};
  CHECK(worst_case_reduction(net, single, mixed) ==
        doctest::Approx(lambda_strategy(net, tk::diamond_paths(), mixed)));
  // s, v3, v2, t misses p1 and p2, so the first candidate is untouched.
  const InterdictionStrategy idle{{{{2, 5, 6}, 1.0}}};
  CHECK(worst_case_reduction(net, tk::diamond_uncertainty(), idle) == 0.0);
}

TEST_CASE("diamond robust instance") {
  const Network net = tk::diamond_network();
  const UncertaintySet u = tk::diamond_uncertainty();
  for (KappaGrid grid : {KappaGrid::kFull, KappaGrid::kGeometric}) {
    const RobustResult r = robust_interdict(net, u, small_options(grid));
    const double bound = robust_guarantee(2, r.integerization.b, r.integerization.m, net.node_count());
    CHECK_FALSE(r.degenerate);
    CHECK(r.worst_case >= bound * 8.0 / 3.0);
    CHECK(r.worst_case <= 8.0 / 3.0 + 1e-9);
    CHECK(r.worst_case == doctest::Approx(worst_case_reduction(net, u, r.strategy)));
    double total = 0.0;
    for (const auto& wp : r.strategy.support) total += wp.weight;
    CHECK(total == doctest::Approx(1.0));
    CHECK(static_cast<double>(r.kappa) / static_cast<double>(r.n_kappa) / static_cast<double>(r.integerization.scale) <=
          r.worst_case + 1e-9);
  }
}

TEST_CASE("selected kappa maximizes kappa over N") {
  const Network net = tk::diamond_network();
  const UncertaintySet u = tk::diamond_uncertainty();
  RobustOptions o = small_options();
  o.forced_scale = 2;
  const RobustResult r = robust_interdict(net, u, o);
  RobustSolver solver(net, u, o);
  for (std::int64_t kappa : solver.kappa_grid()) {
    try {
      const CoverState s = solver.solve_ilp(kappa);
      CHECK(static_cast<double>(r.kappa) * static_cast<double>(s.total()) >=
            static_cast<double>(kappa) * static_cast<double>(r.n_kappa));
      if (kappa < r.kappa) {
        CHECK(static_cast<double>(r.kappa) * static_cast<double>(s.total()) >
              static_cast<double>(kappa) * static_cast<double>(r.n_kappa));
      }
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kInfeasibleAtKappa);
    }
  }
}

TEST_CASE("one candidate tracks the deterministic optimum") {
  tk::Rng rng(67);
  for (int trial = 0; trial < 12; ++trial) {
    tk::InstanceSpec spec;
    spec.nodes = tk::uniform_int(rng, 4, 7);
    spec.k = tk::uniform_int(rng, 1, 3);
    const tk::Instance inst = tk::random_instance(rng, spec);
    const RobustResult r = robust_interdict(inst.net, inst.uncertainty(), small_options(KappaGrid::kGeometric));
    const double opt = tk::brute_pure_optimum(inst.net, inst.paths()).value;
    const double bound = robust_guarantee(2, r.integerization.b, r.integerization.m, inst.net.node_count());
    CHECK(r.worst_case <= opt + 1e-9);
    CHECK(r.worst_case >= bound * opt - 1e-9);
  }
}

TEST_CASE("random two-candidate instances meet the guarantee") {
  tk::Rng rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    tk::InstanceSpec spec;
    spec.nodes = tk::uniform_int(rng, 4, 7);
    spec.k = tk::uniform_int(rng, 1, 3);
    spec.xi = 2;
    spec.disjoint = trial % 2 == 0;
    const tk::Instance inst = tk::random_instance(rng, spec);
    const RobustResult r = robust_interdict(inst.net, inst.uncertainty(), small_options(KappaGrid::kGeometric));
    // Independent value of the 2-row game over all s-t paths.
    std::vector<double> a;
    std::vector<double> b;
    const ThroughputModel m0(inst.net, inst.candidates[0]);
    const ThroughputModel m1(inst.net, inst.candidates[1]);
    for (const auto& p : tk::naive_st_paths(inst.net)) {
      a.push_back(m0.lambda_path(p));
      b.push_back(m1.lambda_path(p));
    }
    const double value = tk::two_candidate_game_value(a, b);
    const double bound = robust_guarantee(2, r.integerization.b, r.integerization.m, inst.net.node_count());
    double min_total = std::min(m0.total_initial(), m1.total_initial());
    CHECK(r.worst_case >= bound * value - 1e-9);
    CHECK(r.worst_case <= value + 1e-9);
    CHECK(r.worst_case >= 0.0);
    CHECK(r.worst_case <= min_total + 1e-9);
    std::int64_t support = static_cast<std::int64_t>(r.strategy.support.size());
    CHECK(support <= r.integerization.m_scaled * 2);
  }
}

TEST_CASE("guarantee formula") {
  // N0 = 8, b = 0, M = 256, d = 8: 8 / (9 · 1 · 8 · 4).
  CHECK(robust_guarantee(8, 0, 256, 8) == doctest::Approx(8.0 / (9.0 * 8.0 * 4.0)));
  CHECK(robust_guarantee(1, 1, 2, 1) == doctest::Approx(1.0 / (2.0 * 2.0 * 1.0 * 1.0)));
}

}  // TEST_SUITE
