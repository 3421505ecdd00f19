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


#include <iostream>
#include <map>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "flowjam/cli.hpp"

namespace fc = flowjam::cli;

int main(int argc, char** argv) {
  CLI::App app{"flowjam: flow interdiction on capacitated DAGs"};
  app.require_subcommand(1);
  const std::map<std::string, flowjam::KappaGrid> grids{{"full", flowjam::KappaGrid::kFull},
                                                        {"geometric", flowjam::KappaGrid::kGeometric}};

  fc::IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "edge list to acyclic skeleton JSON");
  ingest_cmd->add_option("in_file", ingest.in_file, "whitespace edge list")->required();
  ingest_cmd->add_option("out_file", ingest.out_file, "skeleton JSON");
  ingest_cmd->add_option("--seed", ingest.seed);

  fc::GenerateCliOptions gen;
  auto* gen_cmd = app.add_subcommand("generate", "scenario JSON from a skeleton or CNF");
  gen_cmd->add_option("skeleton", gen.skeleton, "skeleton JSON from ingest");
  gen_cmd->add_option("out_file", gen.out_file, "scenario JSON");
  gen_cmd->add_option("--cnf", gen.cnf_file, "DIMACS CNF for the 3-SAT gadget");
  gen_cmd->add_option("--k", gen.k, "user paths per candidate")->check(CLI::PositiveNumber);
  gen_cmd->add_flag("--disjoint", gen.disjoint);
  gen_cmd->add_option("--xi", gen.xi, "candidates in the uncertainty set")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--source", gen.source);
  gen_cmd->add_option("--sink", gen.sink);
  gen_cmd->add_option("--max-st-paths", gen.max_st_paths);

  fc::DetOptions det;
  auto* det_cmd = app.add_subcommand("det", "deterministic interdiction");
  det_cmd->add_option("scenario", det.scenario)->required();
  det_cmd->add_option("--depth", det.depth)->check(CLI::NonNegativeNumber);
  det_cmd->add_option("--anchors", det.anchors)->check(CLI::Range(2, 16));
  det_cmd->add_flag("--oracle", det.oracle);
  det_cmd->add_option("--oracle-cap", det.oracle_cap)->check(CLI::PositiveNumber);
  det_cmd->add_flag("--timing", det.timing);

  fc::RobustCliOptions rob;
  auto* rob_cmd = app.add_subcommand("robust", "robust interdiction");
  rob_cmd->add_option("scenario", rob.scenario)->required();
  rob_cmd->add_option("--depth", rob.depth)->check(CLI::NonNegativeNumber);
  rob_cmd->add_option("--anchors", rob.anchors)->check(CLI::Range(2, 16));
  rob_cmd->add_option("--epsilon", rob.epsilon)->check(CLI::Range(0.0, 1.0));
  rob_cmd->add_option("--n0", rob.n0)->check(CLI::PositiveNumber);
  rob_cmd->add_option("--kappa-grid", rob.grid)->transform(CLI::CheckedTransformer(grids));
  rob_cmd->add_flag("--oracle", rob.oracle);
  rob_cmd->add_option("--oracle-cap", rob.oracle_cap)->check(CLI::PositiveNumber);
  rob_cmd->add_flag("--timing", rob.timing);

  fc::BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "batch runner over scenario files");
  bench_cmd->add_option("scenarios", bench.scenarios, "glob, e.g. runs/*.json")->required();
  bench_cmd->add_option("out_csv", bench.out_csv)->required();
  bench_cmd->add_option("--summary", bench.summary_csv);
  bench_cmd->add_option("--depths", bench.depths)->delimiter(',');
  bench_cmd->add_option("--anchors", bench.anchors)->delimiter(',');
  bench_cmd->add_option("--epsilon", bench.epsilon)->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--n0", bench.n0)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--kappa-grid", bench.grid)->transform(CLI::CheckedTransformer(grids));
  bench_cmd->add_option("--oracle-cap", bench.oracle_cap)->check(CLI::PositiveNumber);
  bench_cmd->add_flag("!--no-oracle", bench.oracle);
  bench_cmd->add_option("--threads", bench.threads)->check(CLI::NonNegativeNumber);
  bench_cmd->add_flag("--timing", bench.timing);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? fc::kExitOk : fc::kExitInputError;
  }

  if (*ingest_cmd) return fc::cmd_ingest(ingest, std::cout, std::cerr);
  if (*gen_cmd) {
    // With --cnf the only positional is the output file.
    if (!gen.cnf_file.empty() && gen.out_file.empty()) std::swap(gen.skeleton, gen.out_file);
    if (gen.skeleton.empty() == gen.cnf_file.empty()) {
      std::cerr << "error: give exactly one of skeleton or --cnf\n";
      return fc::kExitInputError;
    }
    return fc::cmd_generate(gen, std::cout, std::cerr);
  }
  if (*det_cmd) return fc::cmd_det(det, std::cout, std::cerr);
  if (*rob_cmd) return fc::cmd_robust(rob, std::cout, std::cerr);
  return fc::cmd_bench(bench, std::cout, std::cerr);
}
