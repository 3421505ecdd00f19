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


#ifndef FLOWJAM_CLI_HPP_
#define FLOWJAM_CLI_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flowjam/robust.hpp"

namespace flowjam::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumericalFailure = 3;
inline constexpr int kExitOracleTruncated = 4;

struct IngestOptions {
  std::string in_file;
  std::string out_file;
  std::uint64_t seed = 0;
};

struct GenerateCliOptions {
  std::string skeleton;  // ingest output; empty when cnf_file is set
  std::string cnf_file;  // DIMACS CNF, for the 3-SAT reduction
  std::string out_file;
  int k = 10;
  bool disjoint = false;
  int xi = 1;
  std::uint64_t seed = 0;
  std::optional<int> source;
  std::optional<int> sink;
  std::optional<double> max_st_paths;
};

struct DetOptions {
  std::string scenario;
  std::optional<int> depth;  // default ceil(log2 n)
  int anchors = 2;
  bool oracle = false;
  std::size_t oracle_cap = 5000;
  bool timing = false;  // report wall_ms; off keeps output byte-stable
};

struct RobustCliOptions {
  std::string scenario;
  std::optional<int> depth;
  int anchors = 2;
  double epsilon = 0.5;
  int n0 = 8;
  KappaGrid grid = KappaGrid::kFull;
  bool oracle = false;
  std::size_t oracle_cap = 5000;
  bool timing = false;
};

struct BenchOptions {
  std::string scenarios;  // glob over file names, e.g. "runs/*.json"
  std::string out_csv;
  std::string summary_csv;  // default: <out_csv stem>_summary.csv
  std::vector<int> depths{2, 3};
  std::vector<int> anchors{2};
  double epsilon = 0.5;
  int n0 = 8;
  KappaGrid grid = KappaGrid::kGeometric;
  std::size_t oracle_cap = 5000;
  bool oracle = true;
  int threads = 0;  // 0: hardware concurrency, capped by FLOWJAM_THREADS
  bool timing = false;
};

int cmd_ingest(const IngestOptions& options, std::ostream& out, std::ostream& err);
int cmd_generate(const GenerateCliOptions& options, std::ostream& out, std::ostream& err);
int cmd_det(const DetOptions& options, std::ostream& out, std::ostream& err);
int cmd_robust(const RobustCliOptions& options, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

// Files matching a glob whose wildcards appear only in the last component,
// sorted by name.
std::vector<std::string> expand_glob(const std::string& pattern);

// Worker count: requested (or hardware concurrency) capped by FLOWJAM_THREADS.
int worker_count(int requested);

}  // namespace flowjam::cli

#endif  // FLOWJAM_CLI_HPP_
