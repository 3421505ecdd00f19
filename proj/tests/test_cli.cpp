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


#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "flowjam/cli.hpp"
#include "flowjam/robust.hpp"
#include "flowjam/scenario.hpp"
#include "json.hpp"

using namespace flowjam;
using namespace flowjam::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string data_path(const std::string& name) { return std::string(FLOWJAM_TEST_DATA) + "/" + name; }
std::string golden(const std::string& name) { return std::string(FLOWJAM_DOCS_DIR) + "/golden/" + name; }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

// Fresh scratch directory, removed on scope exit.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("flowjam_cli_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

template <typename Options, typename Fn>
Run run(Fn fn, const Options& options) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = fn(options, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

const char* kHeader = "scenario,algorithm,depth,anchors,epsilon,n0,k,xi,achieved,oracle,ratio,wall_ms,evals";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("ingest") {
  TempDir dir("ingest");
  spit(dir / "two.txt", "0\t1\n");
  Run r = run(cmd_ingest, IngestOptions{dir / "two.txt", dir / "two.json", 1});
  CHECK(r.code == kExitOk);
  const json sk = json::parse(slurp(dir / "two.json"));
  CHECK(sk["nodes"] == 2);
  CHECK(sk["edges"] == json::array({json::array({0, 1})}));
  CHECK(r.err.empty());

  spit(dir / "cyc.txt", "0 1\n1 2\n2 0\n");
  r = run(cmd_ingest, IngestOptions{dir / "cyc.txt", dir / "cyc.json", 1});
  CHECK(r.code == kExitOk);
  CHECK(r.err.find("removed 1 feedback edges") != std::string::npos);
  CHECK(json::parse(slurp(dir / "cyc.json"))["removed"].size() == 1);
  CHECK(json::parse(r.out)["removed"] == 1);

  spit(dir / "bad.txt", "0 1\nx y\n");
  r = run(cmd_ingest, IngestOptions{dir / "bad.txt", dir / "bad.json", 1});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "bad.json"));

  r = run(cmd_ingest, IngestOptions{dir / "missing.txt", dir / "m.json", 1});
  CHECK(r.code == kExitInputError);
}

TEST_CASE("generate") {
  TempDir dir("generate");
  REQUIRE(run(cmd_ingest, IngestOptions{golden("sample.edges"), dir / "sk.json", 0}).code == kExitOk);
  GenerateCliOptions g;
  g.skeleton = dir / "sk.json";
  g.out_file = dir / "a.json";
  g.k = 0;
  CHECK(run(cmd_generate, g).code == kExitOk);
  CHECK(load_scenario(dir / "a.json").user_paths().paths.empty());

  g.k = 2;
  g.disjoint = true;
  g.seed = 42;
  CHECK(run(cmd_generate, g).code == kExitOk);
  g.out_file = dir / "b.json";
  CHECK(run(cmd_generate, g).code == kExitOk);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));

  g.out_file.clear();
  const Run printed = run(cmd_generate, g);
  CHECK(printed.out.find(slurp(dir / "a.json")) != std::string::npos);

  g.k = 50;
  CHECK(run(cmd_generate, g).code == kExitInputError);

  spit(dir / "broken.json", "{\"nodes\": 3}");
  g.skeleton = dir / "broken.json";
  g.k = 1;
  const Run bad = run(cmd_generate, g);
  CHECK(bad.code == kExitInputError);
  CHECK(bad.err.find("/edges") != std::string::npos);
}

TEST_CASE("det on diamond") {
  DetOptions o;
  o.scenario = data_path("diamond_det.json");
  o.depth = 2;
  o.oracle = true;
  Run r = run(cmd_det, o);
  REQUIRE(r.code == kExitOk);
  json j = json::parse(r.out);
  CHECK(j["achieved"].get<double>() == doctest::Approx(4.0));
  CHECK(j["ratio"].get<double>() == doctest::Approx(1.0));
  CHECK(j["scenario"] == "diamond_det");
  CHECK_FALSE(j.contains("wall_ms"));

  o.depth = 0;
  j = json::parse(run(cmd_det, o).out);
  CHECK(j["ratio"].get<double>() <= 1.0 + 1e-9);

  o.timing = true;
  CHECK(json::parse(run(cmd_det, o).out).contains("wall_ms"));

  o.timing = false;
  o.oracle = false;
  j = json::parse(run(cmd_det, o).out);
  CHECK_FALSE(j.contains("oracle"));
  CHECK_FALSE(j.contains("ratio"));
}

TEST_CASE("exit codes") {
  TempDir dir("exit");
  DetOptions o;
  o.scenario = data_path("diamond_det.json");
  o.oracle = true;
  o.oracle_cap = 2;
  Run r = run(cmd_det, o);
  CHECK(r.code == kExitOracleTruncated);
  json j = json::parse(r.out);
  CHECK(j["oracle_truncated"] == true);
  CHECK(j["ratio"].is_null());

  o.scenario = dir / "none.json";
  CHECK(run(cmd_det, o).code == kExitInputError);

  auto doc = json::parse(slurp(data_path("diamond_det.json")));
  doc.erase("budget");
  spit(dir / "nobudget.json", doc.dump());
  o.scenario = dir / "nobudget.json";
  r = run(cmd_det, o);
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("/budget") != std::string::npos);

  o.scenario = data_path("diamond_robust.json");
  CHECK(run(cmd_det, o).code == kExitInputError);

  o.scenario = data_path("diamond_det.json");
  o.anchors = 1;
  CHECK(run(cmd_det, o).code == kExitInputError);
}

TEST_CASE("robust on diamond") {
  RobustCliOptions o;
  o.scenario = data_path("diamond_robust.json");
  o.n0 = 2;
  o.grid = KappaGrid::kGeometric;
  o.oracle = true;
  const Run r = run(cmd_robust, o);
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["oracle"].get<double>() == doctest::Approx(8.0 / 3.0).epsilon(1e-9));
  CHECK(j["achieved"].get<double>() <= 8.0 / 3.0 + 1e-9);
  CHECK(j["ratio"].get<double>() == doctest::Approx(j["achieved"].get<double>() / j["oracle"].get<double>()));
  double total = 0.0;
  for (const auto& w : j["strategy"]) total += w["weight"].get<double>();
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("robust with one candidate tracks det") {
  RobustCliOptions o;
  o.scenario = data_path("diamond_det.json");
  o.n0 = 2;
  o.grid = KappaGrid::kGeometric;
  o.depth = 2;
  const json rob = json::parse(run(cmd_robust, o).out);
  DetOptions d;
  d.scenario = o.scenario;
  d.depth = 2;
  const json det = json::parse(run(cmd_det, d).out);
  const double bound = robust_guarantee(2, 0, 6 * 9, 6);
  CHECK(rob["achieved"].get<double>() <= det["achieved"].get<double>() + 1e-9);
  CHECK(rob["achieved"].get<double>() >= bound * det["achieved"].get<double>());
}

TEST_CASE("bench") {
  TempDir dir("bench");
  BenchOptions b;
  b.scenarios = dir / "nothing_*.json";
  b.out_csv = dir / "empty.csv";
  CHECK(run(cmd_bench, b).code == kExitOk);
  CHECK(slurp(dir / "empty.csv") == std::string(kHeader) + "\n");

  fs::copy_file(data_path("diamond_det.json"), dir / "s1.json");
  fs::copy_file(golden("sample.scenario.json"), dir / "s2.json");
  fs::copy_file(golden("two_var.scenario.json"), dir / "s3.json");
  b.scenarios = dir / "s*.json";
  b.out_csv = dir / "runs.csv";
  b.depths = {1, 2};
  b.threads = 3;
  REQUIRE(run(cmd_bench, b).code == kExitOk);
  const auto rows = read_csv(dir / "runs.csv");
  REQUIRE(rows.size() == 7);
  CHECK(slurp(dir / "runs.csv").substr(0, std::string(kHeader).size()) == kHeader);
  CHECK(rows[1][0] == "s1");
  CHECK(rows[2][0] == "s1");
  CHECK(rows[5][0] == "s3");
  CHECK(rows[1][2] == "1");
  CHECK(rows[2][2] == "2");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 13);
    const double ratio = std::stod(rows[i][10]);
    CHECK(ratio >= 0.0);
    CHECK(ratio <= 1.0 + 1e-9);
    CHECK(ratio == doctest::Approx(std::stod(rows[i][8]) / std::stod(rows[i][9])));
  }

  // Summary means recomputed from the rows.
  const auto summary = read_csv(dir / "runs_summary.csv");
  REQUIRE(summary.size() == 3);
  for (std::size_t s = 1; s < summary.size(); ++s) {
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i][2] == summary[s][1]) {
        sum += std::stod(rows[i][10]);
        ++count;
      }
    }
    CHECK(summary[s][5] == std::to_string(count));
    CHECK(std::stod(summary[s][7]) == doctest::Approx(sum / count));
  }

  // Row order and bytes do not depend on the worker count.
  b.threads = 1;
  b.out_csv = dir / "serial.csv";
  REQUIRE(run(cmd_bench, b).code == kExitOk);
  CHECK(slurp(dir / "serial.csv") == slurp(dir / "runs.csv"));
  CHECK(slurp(dir / "serial_summary.csv") == slurp(dir / "runs_summary.csv"));

  b.oracle = false;
  b.out_csv = dir / "plain.csv";
  REQUIRE(run(cmd_bench, b).code == kExitOk);
  for (const auto& row : read_csv(dir / "plain.csv")) {
    if (row[0] == "scenario") continue;
    CHECK(row[9].empty());
    CHECK(row[10].empty());
  }
}

TEST_CASE("glob and workers") {
  TempDir dir("glob");
  for (const char* name : {"b.json", "a.json", "c.txt", "a2.json"}) spit(dir / name, "{}");
  const auto files = expand_glob(dir / "*.json");
  REQUIRE(files.size() == 3);
  CHECK(fs::path(files[0]).filename() == "a.json");
  CHECK(fs::path(files[1]).filename() == "a2.json");
  CHECK(fs::path(files[2]).filename() == "b.json");
  CHECK(expand_glob(dir / "nope/*.json").empty());

  CHECK(worker_count(3) >= 1);
  setenv("FLOWJAM_THREADS", "2", 1);
  CHECK(worker_count(8) == 2);
  CHECK(worker_count(1) == 1);
  unsetenv("FLOWJAM_THREADS");
  CHECK(worker_count(8) == 8);
}

TEST_CASE("golden files") {
  TempDir dir("golden");
  Run r = run(cmd_ingest, IngestOptions{golden("sample.edges"), dir / "sample.skeleton.json", 3});
  REQUIRE(r.code == kExitOk);
  CHECK(slurp(dir / "sample.skeleton.json") == slurp(golden("sample.skeleton.json")));

  GenerateCliOptions g;
  g.skeleton = golden("sample.skeleton.json");
  g.out_file = dir / "sample.scenario.json";
  g.k = 2;
  g.disjoint = true;
  g.seed = 7;
  REQUIRE(run(cmd_generate, g).code == kExitOk);
  CHECK(slurp(dir / "sample.scenario.json") == slurp(golden("sample.scenario.json")));

  GenerateCliOptions c;
  c.cnf_file = golden("two_var.cnf");
  c.out_file = dir / "two_var.scenario.json";
  REQUIRE(run(cmd_generate, c).code == kExitOk);
  CHECK(slurp(dir / "two_var.scenario.json") == slurp(golden("two_var.scenario.json")));

  DetOptions d;
  d.scenario = golden("diamond_det.json");
  d.depth = 2;
  d.oracle = true;
  CHECK(run(cmd_det, d).out == slurp(golden("det_result.json")));

  RobustCliOptions o;
  o.scenario = golden("diamond_robust.json");
  o.n0 = 2;
  o.grid = KappaGrid::kGeometric;
  o.oracle = true;
  CHECK(run(cmd_robust, o).out == slurp(golden("robust_result.json")));

  fs::copy_file(golden("diamond_det.json"), dir / "diamond_det.json");
  fs::copy_file(golden("diamond_robust.json"), dir / "diamond_robust.json");
  BenchOptions b;
  b.scenarios = dir / "diamond_*.json";
  b.out_csv = dir / "bench.csv";
  b.depths = {1, 2};
  b.n0 = 2;
  REQUIRE(run(cmd_bench, b).code == kExitOk);
  CHECK(slurp(dir / "bench.csv") == slurp(golden("bench.csv")));
  CHECK(slurp(dir / "bench_summary.csv") == slurp(golden("bench_summary.csv")));
}

}  // TEST_SUITE
