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


#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "flowjam/errors.hpp"
#include "flowjam/greedy.hpp"
#include "flowjam/oracle.hpp"
#include "flowjam/scenario.hpp"
#include "testkit.hpp"

using namespace flowjam;
namespace tk = flowjam::testkit;

namespace {

// Same network with edges listed in a permuted order; paths are remapped.
struct Relabeled {
  Network net;
  std::vector<UserPaths> candidates;
};

Relabeled relabel(const Network& net, const std::vector<UserPaths>& cands, tk::Rng& rng) {
  std::vector<EdgeId> perm(static_cast<std::size_t>(net.edge_count()));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Arc> arcs(perm.size());
  std::vector<double> caps(perm.size());
  for (std::size_t old = 0; old < perm.size(); ++old) {
    arcs[static_cast<std::size_t>(perm[old])] = net.edge(static_cast<EdgeId>(old));
    caps[static_cast<std::size_t>(perm[old])] = net.capacity(static_cast<EdgeId>(old));
  }
  Relabeled out{Network(net.node_count(), arcs, caps, net.source(), net.sink(), net.budget()), {}};
  for (const auto& c : cands) {
    UserPaths up = c;
    for (auto& p : up.paths) {
      for (auto& e : p) e = perm[static_cast<std::size_t>(e)];
    }
    out.candidates.push_back(up);
  }
  return out;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("single path network") {
  const Network net(3, {{0, 1}, {1, 2}}, {2.0, 2.0}, 0, 2, 1.0);
  const UserPaths up{{{0, 1}}, {2.0}};
  const OracleReport r = optimal_pure_deterministic(net, up);
  CHECK_FALSE(r.truncated);
  CHECK(r.paths_enumerated == 1);
  CHECK(r.path == std::vector<EdgeId>{0, 1});
  CHECK(r.optimal_value == doctest::Approx(1.0));
}

TEST_CASE("diamond deterministic optimum") {
  const OracleReport r = optimal_pure_deterministic(tk::diamond_network(), tk::diamond_paths());
  CHECK(r.optimal_value == doctest::Approx(4.0).epsilon(1e-9));
  // Two optima tie at 4; the smaller sorted edge set wins.
  CHECK(r.path == tk::diamond_flow_path());
  CHECK(r.paths_enumerated == 4);
}

TEST_CASE("satisfiable 3-SAT instance reaches k") {
  const CnfFormula f{3, {{1, -2, 3}, {-1, 2}, {2, 3}}};
  REQUIRE(tk::brute_force_sat(f));
  const Scenario s = generate_3sat_instance(f);
  const OracleReport r = optimal_pure_deterministic(s.network, s.user_paths());
  CHECK(r.optimal_value == doctest::Approx(3.0));
}

TEST_CASE("deterministic oracle agrees with brute force") {
  tk::Rng rng(101);
  for (int trial = 0; trial < 120; ++trial) {
    tk::InstanceSpec spec;
    spec.nodes = tk::uniform_int(rng, 3, 9);
    spec.k = tk::uniform_int(rng, 0, 4);
    spec.disjoint = trial % 2 == 0;
    const tk::Instance inst = tk::random_instance(rng, spec);
    const OracleReport r = optimal_pure_deterministic(inst.net, inst.paths());
    const tk::PureOptimum b = tk::brute_pure_optimum(inst.net, inst.paths());
    CHECK(r.optimal_value == doctest::Approx(b.value).epsilon(1e-9));
    CHECK(r.paths_enumerated == tk::naive_st_paths(inst.net).size());
    CHECK(lambda(inst.net, inst.paths(), path_to_flow(inst.net, r.path)) ==
          doctest::Approx(r.optimal_value).epsilon(1e-9));
  }
}

TEST_CASE("oracle dominates the recursive greedy") {
  tk::Rng rng(103);
  for (int trial = 0; trial < 80; ++trial) {
    tk::InstanceSpec spec;
    spec.nodes = tk::uniform_int(rng, 3, 9);
    spec.k = tk::uniform_int(rng, 1, 4);
    spec.disjoint = trial % 3 != 0;
    const tk::Instance inst = tk::random_instance(rng, spec);
    const ThroughputModel model(inst.net, inst.paths());
    const OracleReport r = optimal_pure_deterministic(model);
    for (int depth = 0; depth <= 3; ++depth) {
      const DeterministicResult g = deterministic_interdict(model, GreedyConfig{depth, 2});
      CHECK(r.optimal_value >= g.reduction - 1e-9);
    }
  }
}

TEST_CASE("robust LP with one candidate equals the pure optimum") {
  tk::Rng rng(107);
  for (int trial = 0; trial < 60; ++trial) {
    tk::InstanceSpec spec;
    spec.nodes = tk::uniform_int(rng, 3, 8);
    spec.k = tk::uniform_int(rng, 0, 4);
    spec.disjoint = trial % 2 == 0;
    const tk::Instance inst = tk::random_instance(rng, spec);
    const OracleReport pure = optimal_pure_deterministic(inst.net, inst.paths());
    const OracleReport mixed = optimal_robust_lp(inst.net, inst.uncertainty());
    CHECK(mixed.optimal_value == doctest::Approx(pure.optimal_value).epsilon(1e-7));
  }
}

TEST_CASE("diamond robust optimum") {
  const Network net = tk::diamond_network();
  const UncertaintySet u = tk::diamond_uncertainty();
  const OracleReport r = optimal_robust_lp(net, u);
  CHECK_FALSE(r.truncated);
  CHECK(r.optimal_value == doctest::Approx(8.0 / 3.0).epsilon(1e-9));
  double total = 0.0;
  for (const auto& wp : r.strategy.support) total += wp.weight;
  CHECK(total == doctest::Approx(1.0));
  CHECK(worst_case_reduction(net, u, r.strategy) == doctest::Approx(8.0 / 3.0).epsilon(1e-9));
  // Every pure strategy is strictly worse.
  for (const auto& p : tk::naive_st_paths(net)) {
    const InterdictionStrategy point{{{p, 1.0}}};
    CHECK(worst_case_reduction(net, u, point) < 8.0 / 3.0 - 1e-9);
  }
}

TEST_CASE("two candidates against the exact 2-row game") {
  tk::Rng rng(109);
  for (int trial = 0; trial < 60; ++trial) {
    tk::InstanceSpec spec;
    spec.nodes = tk::uniform_int(rng, 3, 8);
    spec.k = tk::uniform_int(rng, 1, 3);
    spec.xi = 2;
    spec.disjoint = trial % 2 == 0;
    const tk::Instance inst = tk::random_instance(rng, spec);
    const OracleReport r = optimal_robust_lp(inst.net, inst.uncertainty());
    const ThroughputModel m0(inst.net, inst.candidates[0]);
    const ThroughputModel m1(inst.net, inst.candidates[1]);
    std::vector<double> a;
    std::vector<double> b;
    double best_pure = 0.0;
    for (const auto& p : tk::naive_st_paths(inst.net)) {
      a.push_back(m0.lambda_path(p));
      b.push_back(m1.lambda_path(p));
      best_pure = std::max(best_pure, std::min(a.back(), b.back()));
    }
    CHECK(r.optimal_value == doctest::Approx(tk::two_candidate_game_value(a, b)).epsilon(1e-7));
    CHECK(r.optimal_value >= best_pure - 1e-9);
  }
}

TEST_CASE("a flow good for both candidates is optimal pure") {
  // Both candidates route through the bottleneck edge 0 -> 1.
  const Network net(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}, {1, 2}}, {2.0, 4.0, 4.0, 4.0, 4.0}, 0, 3, 1.0);
  const UncertaintySet u{{UserPaths{{{0, 1}}, {2.0}}, UserPaths{{{0, 4, 3}}, {2.0}}}};
  const OracleReport r = optimal_robust_lp(net, u);
  // Grid search over mixtures of any two single-path flows.
  const auto paths = tk::naive_st_paths(net);
  double grid = 0.0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = i; j < paths.size(); ++j) {
      for (int step = 0; step <= 100; ++step) {
        const double x = step / 100.0;
        InterdictionStrategy w{{{paths[i], x}, {paths[j], 1.0 - x}}};
        if (i == j) w.support = {{paths[i], 1.0}};
        grid = std::max(grid, worst_case_reduction(net, u, w));
      }
    }
  }
  CHECK(r.optimal_value == doctest::Approx(grid).epsilon(1e-9));
  CHECK(r.optimal_value == doctest::Approx(1.0));
  double pure = 0.0;
  for (const auto& p : paths) pure = std::max(pure, worst_case_reduction(net, u, {{{p, 1.0}}}));
  CHECK(pure == doctest::Approx(r.optimal_value));
}

TEST_CASE("value ignores edge enumeration order") {
  tk::Rng rng(113);
  for (int trial = 0; trial < 40; ++trial) {
    tk::InstanceSpec spec;
    spec.nodes = tk::uniform_int(rng, 3, 8);
    spec.k = tk::uniform_int(rng, 1, 3);
    spec.xi = tk::uniform_int(rng, 1, 3);
    spec.disjoint = trial % 2 == 0;
    const tk::Instance inst = tk::random_instance(rng, spec);
    const Relabeled re = relabel(inst.net, inst.candidates, rng);
    const double v1 = optimal_robust_lp(inst.net, inst.uncertainty()).optimal_value;
    const double v2 = optimal_robust_lp(re.net, UncertaintySet{re.candidates}).optimal_value;
    CHECK(v1 == doctest::Approx(v2).epsilon(1e-7));
  }
}

TEST_CASE("robust LP dominates the robust framework") {
  tk::Rng rng(127);
  for (int trial = 0; trial < 8; ++trial) {
    tk::InstanceSpec spec;
    spec.nodes = tk::uniform_int(rng, 4, 7);
    spec.k = tk::uniform_int(rng, 1, 3);
    spec.xi = 3;
    const tk::Instance inst = tk::random_instance(rng, spec);
    RobustOptions o;
    o.greedy = GreedyConfig{3, 2};
    o.n0 = 2;
    o.grid = KappaGrid::kGeometric;
    const RobustResult rr = robust_interdict(inst.net, inst.uncertainty(), o);
    const OracleReport r = optimal_robust_lp(inst.net, inst.uncertainty());
    CHECK(r.optimal_value >= rr.worst_case - 1e-9);
  }
}

TEST_CASE("truncation is reported") {
  const Network net = tk::diamond_network();
  const OracleReport d = optimal_pure_deterministic(net, tk::diamond_paths(), 3);
  CHECK(d.truncated);
  CHECK(d.paths_enumerated == 4);
  const OracleReport r = optimal_robust_lp(net, tk::diamond_uncertainty(), 2);
  CHECK(r.truncated);
  CHECK_FALSE(optimal_pure_deterministic(net, tk::diamond_paths(), 4).truncated);
  CHECK_THROWS_AS(optimal_pure_deterministic(net, tk::diamond_paths(), 0), Error);
}

}  // TEST_SUITE
