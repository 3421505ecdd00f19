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


#ifndef FLOWJAM_SCENARIO_HPP_
#define FLOWJAM_SCENARIO_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "flowjam/network.hpp"
#include "flowjam/robust.hpp"
#include "flowjam/throughput.hpp"

namespace flowjam {

// Subsystem seed from a master seed and a label (FNV-1a of the label mixed
// with the seed through splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

struct EdgeList {
  DirectedGraph graph;
  std::size_t duplicates = 0;
  std::vector<long long> original_ids;  // dense index -> id in the file
};

// SNAP-style edge list: "tail<TAB>head" or space separated, '#' comments.
// Node ids are remapped densely in order of first appearance. Throws
// ParseError.
EdgeList load_edgelist(std::istream& in);

enum class ScenarioMode { kDeterministic, kRobust };

struct Scenario {
  Network network;
  ScenarioMode mode = ScenarioMode::kDeterministic;
  // Exactly one candidate in deterministic mode.
  std::vector<UserPaths> candidates;
  nlohmann::json metadata = nlohmann::json::object();

  const UserPaths& user_paths() const { return candidates.front(); }
  UncertaintySet uncertainty_set() const { return UncertaintySet{candidates}; }
};

// Random DAG on `nodes` nodes: node i links to up to `out_degree` distinct
// nodes drawn from i+1 … i+window.
DirectedGraph random_dag(int nodes, int out_degree, int window, std::uint64_t seed);

struct GenerateOptions {
  int k = 0;
  bool disjoint = true;
  int xi = 1;  // 1 → deterministic scenario
  std::uint64_t seed = 0;
  std::optional<NodeId> source;
  std::optional<NodeId> sink;
  // When set, the random interdictor pair must have at most this many paths.
  std::optional<double> max_st_paths;
};

// Capacities ~ Normal(20, 3) redrawn below 1.0, γ = min C, user paths from a
// random connected pair joined by a random walk, λ_i ~ U(0, bottleneck_i]
// then jointly rescaled onto the capacities. Throws
// Error(kGenerationFailed) after 10·k rejected path draws per candidate.
Scenario generate_scenario(const DirectedGraph& graph, const GenerateOptions& options);

// Literals are ±v for variable v in 1 … variable_count.
struct CnfFormula {
  int variable_count = 0;
  std::vector<std::vector<int>> clauses;
};

bool is_satisfiable(const CnfFormula& formula);

// Deterministic scenario whose optimal reduction equals the clause count iff
// the formula is satisfiable. Throws Error(kInvalidFormula).
Scenario generate_3sat_instance(const CnfFormula& formula);

std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(std::string_view text);
void save_scenario(const Scenario& scenario, const std::string& path);
Scenario load_scenario(const std::string& path);

// Byte-stable JSON rendering: object keys sorted, doubles with 17
// significant digits.
std::string canonical_dump(const nlohmann::json& value);

}  // namespace flowjam

#endif  // FLOWJAM_SCENARIO_HPP_
