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


#include "flowjam/cli.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "flowjam/errors.hpp"
#include "flowjam/greedy.hpp"
#include "flowjam/oracle.hpp"
#include "flowjam/scenario.hpp"

namespace flowjam::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

int exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::kNumericalFailure ? kExitNumericalFailure : kExitInputError;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidInput, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kInvalidInput, "cannot write " + path);
  out << text;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string scenario_id(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

DirectedGraph load_skeleton(const std::string& path) {
  const json doc = json::parse(read_file(path));
  if (!doc.contains("nodes") || !doc["nodes"].is_number_integer()) {
    throw SchemaError("/nodes", "missing node count");
  }
  if (!doc.contains("edges") || !doc["edges"].is_array()) throw SchemaError("/edges", "missing edges");
  DirectedGraph g;
  g.node_count = doc["nodes"].get<int>();
  for (std::size_t e = 0; e < doc["edges"].size(); ++e) {
    const json& item = doc["edges"][e];
    const std::string ptr = "/edges/" + std::to_string(e);
    if (!item.is_array() || item.size() < 2 || !item[0].is_number_integer() ||
        !item[1].is_number_integer()) {
      throw SchemaError(ptr, "expected [tail, head]");
    }
    const int tail = item[0].get<int>();
    const int head = item[1].get<int>();
    if (tail < 0 || head < 0 || tail >= g.node_count || head >= g.node_count) {
      throw SchemaError(ptr, "node out of range");
    }
    g.edges.push_back({tail, head});
  }
  topological_order(g.node_count, g.edges);
  return g;
}

CnfFormula load_dimacs(const std::string& path) {
  std::istringstream in(read_file(path));
  CnfFormula f;
  std::string line;
  std::size_t number = 0;
  std::vector<int> clause;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first) || first == "c") continue;
    if (first == "p") {
      std::string kind;
      int clauses = 0;
      if (!(tokens >> kind >> f.variable_count >> clauses) || kind != "cnf") {
        throw ParseError(number, "bad problem line");
      }
      header = true;
      continue;
    }
    if (!header) throw ParseError(number, "clause before problem line");
    std::istringstream all(line);
    int lit = 0;
    while (all >> lit) {
      if (lit == 0) {
        f.clauses.push_back(clause);
        clause.clear();
      } else {
        clause.push_back(lit);
      }
    }
    if (!all.eof()) throw ParseError(number, "non-integer literal");
  }
  if (!clause.empty()) f.clauses.push_back(clause);
  return f;
}

struct OracleOutcome {
  std::optional<double> value;
  bool truncated = false;
};

json run_json(const std::string& id, const std::string& algorithm, int depth, int anchors) {
  return json{{"scenario", id}, {"algorithm", algorithm}, {"depth", depth}, {"anchors", anchors}};
}

void attach_oracle(json& j, double achieved, const OracleOutcome& o) {
  if (!o.value) {
    j["oracle"] = nullptr;
    j["ratio"] = nullptr;
    if (o.truncated) j["oracle_truncated"] = true;
    return;
  }
  j["oracle"] = *o.value;
  j["ratio"] = *o.value > 0.0 ? json(achieved / *o.value) : json(nullptr);
}

// One bench/det/robust evaluation, shared by the single-run commands and the
// bench loop.
struct RunRow {
  std::string scenario;
  std::string algorithm;
  int depth = 0;
  int anchors = 2;
  std::optional<double> epsilon;
  std::optional<int> n0;
  int k = 0;
  int xi = 1;
  double achieved = 0.0;
  OracleOutcome oracle;
  double wall_ms = 0.0;
  std::uint64_t evals = 0;
};

RunRow run_det(const Scenario& s, const std::string& id, int depth, int anchors) {
  RunRow row;
  row.scenario = id;
  const ThroughputModel model(s.network, s.user_paths());
  row.algorithm = model.disjoint() ? "recursive_greedy" : "extended_recursive_greedy";
  row.depth = depth;
  row.anchors = anchors;
  row.k = static_cast<int>(s.user_paths().paths.size());
  const auto start = Clock::now();
  const DeterministicResult r = deterministic_interdict(model, GreedyConfig{depth, anchors});
  row.wall_ms = elapsed_ms(start);
  row.achieved = r.reduction;
  row.evals = r.stats.evaluations;
  return row;
}

RunRow run_robust(const Scenario& s, const std::string& id, int depth, int anchors, double epsilon,
                  int n0, KappaGrid grid, RobustResult* out) {
  RunRow row;
  row.scenario = id;
  row.algorithm = "robust_framework";
  row.depth = depth;
  row.anchors = anchors;
  row.epsilon = epsilon;
  row.n0 = n0;
  row.k = s.candidates.empty() ? 0 : static_cast<int>(s.candidates.front().paths.size());
  row.xi = static_cast<int>(s.candidates.size());
  RobustOptions ro;
  ro.greedy = GreedyConfig{depth, anchors};
  ro.epsilon = epsilon;
  ro.n0 = n0;
  ro.grid = grid;
  const auto start = Clock::now();
  RobustResult r = robust_interdict(s.network, s.uncertainty_set(), ro);
  row.wall_ms = elapsed_ms(start);
  row.achieved = r.worst_case;
  row.evals = r.stats.evaluations;
  if (out != nullptr) *out = std::move(r);
  return row;
}

OracleOutcome det_oracle(const Scenario& s, std::size_t cap) {
  const OracleReport rep = optimal_pure_deterministic(s.network, s.user_paths(), cap);
  if (rep.truncated) return {std::nullopt, true};
  return {rep.optimal_value, false};
}

OracleOutcome robust_oracle(const Scenario& s, std::size_t cap) {
  const OracleReport rep = optimal_robust_lp(s.network, s.uncertainty_set(), cap);
  if (rep.truncated) return {std::nullopt, true};
  return {rep.optimal_value, false};
}

std::string csv_row(const RunRow& r, bool timing) {
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  std::ostringstream os;
  os << r.scenario << ',' << r.algorithm << ',' << r.depth << ',' << r.anchors << ','
     << opt(r.epsilon) << ',' << (r.n0 ? std::to_string(*r.n0) : std::string()) << ',' << r.k << ','
     << r.xi << ',' << format_number(r.achieved) << ',' << opt(r.oracle.value) << ',';
  if (r.oracle.value && *r.oracle.value > 0.0) os << format_number(r.achieved / *r.oracle.value);
  os << ',' << (timing ? format_number(r.wall_ms) : std::string("0")) << ',' << r.evals << '\n';
  return os.str();
}

}  // namespace

std::vector<std::string> expand_glob(const std::string& pattern) {
  const std::filesystem::path p(pattern);
  const std::filesystem::path dir = p.has_parent_path() ? p.parent_path() : std::filesystem::path(".");
  const std::string leaf = p.filename().string();
  std::vector<std::string> out;
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (fnmatch(leaf.c_str(), name.c_str(), 0) == 0) {
      out.push_back(p.has_parent_path() ? (dir / name).string() : name);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int worker_count(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(n, 1);
  if (const char* cap = std::getenv("FLOWJAM_THREADS")) {
    const int limit = std::atoi(cap);
    if (limit > 0) n = std::min(n, limit);
  }
  return n;
}

int cmd_ingest(const IngestOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::istringstream in(read_file(options.in_file));
    const EdgeList list = load_edgelist(in);
    const AcyclicSubgraph dag = remove_feedback_edges(list.graph);
    json edges = json::array();
    for (const Arc& a : dag.graph.edges) edges.push_back({a.tail, a.head});
    json removed = json::array();
    for (const Arc& a : dag.removed) removed.push_back({a.tail, a.head});
    const json skeleton{{"nodes", dag.graph.node_count},
                        {"edges", edges},
                        {"removed", removed},
                        {"duplicates", list.duplicates},
                        {"original_ids", list.original_ids},
                        {"metadata", {{"source_file", std::filesystem::path(options.in_file).filename().string()},
                                      {"seed", options.seed}}}};
    if (!options.out_file.empty()) write_file(options.out_file, canonical_dump(skeleton) + "\n");
    if (!dag.removed.empty()) err << "removed " << dag.removed.size() << " feedback edges\n";
    out << canonical_dump(json{{"command", "ingest"},
                               {"nodes", dag.graph.node_count},
                               {"edges", dag.graph.edges.size()},
                               {"removed", dag.removed.size()},
                               {"duplicates", list.duplicates}})
        << "\n";
    return kExitOk;
  });
}

int cmd_generate(const GenerateCliOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Scenario s = [&] {
      if (!options.cnf_file.empty()) return generate_3sat_instance(load_dimacs(options.cnf_file));
      GenerateOptions g;
      g.k = options.k;
      g.disjoint = options.disjoint;
      g.xi = options.xi;
      g.seed = options.seed;
      g.source = options.source;
      g.sink = options.sink;
      g.max_st_paths = options.max_st_paths;
      Scenario gen = generate_scenario(load_skeleton(options.skeleton), g);
      gen.metadata["skeleton"] = std::filesystem::path(options.skeleton).filename().string();
      return gen;
    }();
    const std::string text = scenario_to_json(s);
    if (!options.out_file.empty()) {
      write_file(options.out_file, text);
    }
    out << canonical_dump(json{{"command", "generate"},
                               {"nodes", s.network.node_count()},
                               {"edges", s.network.edge_count()},
                               {"source", s.network.source()},
                               {"sink", s.network.sink()},
                               {"budget", s.network.budget()},
                               {"candidates", s.candidates.size()}})
        << "\n";
    if (options.out_file.empty()) out << text;
    return kExitOk;
  });
}

int cmd_det(const DetOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = load_scenario(options.scenario);
    if (s.mode != ScenarioMode::kDeterministic) {
      throw Error(ErrorKind::kInvalidInput, "det needs a deterministic scenario");
    }
    const int depth = options.depth.value_or(default_depth(s.network.node_count()));
    const ThroughputModel model(s.network, s.user_paths());
    const auto start = Clock::now();
    const DeterministicResult r = deterministic_interdict(model, GreedyConfig{depth, options.anchors});
    const double wall = elapsed_ms(start);
    json j = run_json(scenario_id(options.scenario),
                      model.disjoint() ? "recursive_greedy" : "extended_recursive_greedy", depth,
                      options.anchors);
    j["achieved"] = r.reduction;
    j["path"] = r.path;
    j["evals"] = r.stats.evaluations;
    j["calls"] = r.stats.calls;
    int code = kExitOk;
    if (options.oracle) {
      const OracleOutcome o = det_oracle(s, options.oracle_cap);
      attach_oracle(j, r.reduction, o);
      if (o.truncated) code = kExitOracleTruncated;
    }
    if (options.timing) j["wall_ms"] = wall;
    out << canonical_dump(j) << "\n";
    return code;
  });
}

int cmd_robust(const RobustCliOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = load_scenario(options.scenario);
    const int depth = options.depth.value_or(default_depth(s.network.node_count()));
    RobustResult r;
    const RunRow row = run_robust(s, scenario_id(options.scenario), depth, options.anchors,
                                  options.epsilon, options.n0, options.grid, &r);
    json j = run_json(row.scenario, row.algorithm, depth, options.anchors);
    j["epsilon"] = options.epsilon;
    j["n0"] = options.n0;
    j["kappa_grid"] = options.grid == KappaGrid::kFull ? "full" : "geometric";
    j["achieved"] = r.worst_case;
    j["kappa"] = r.kappa;
    j["n_kappa"] = r.n_kappa;
    j["scale"] = r.integerization.scale;
    j["m"] = r.integerization.m_scaled;
    j["degenerate"] = r.degenerate;
    json support = json::array();
    for (const auto& [path, weight] : r.strategy.support) support.push_back({{"path", path}, {"weight", weight}});
    j["strategy"] = support;
    j["evals"] = r.stats.evaluations;
    int code = kExitOk;
    if (options.oracle) {
      const OracleOutcome o = robust_oracle(s, options.oracle_cap);
      attach_oracle(j, r.worst_case, o);
      if (o.truncated) code = kExitOracleTruncated;
    }
    if (options.timing) j["wall_ms"] = row.wall_ms;
    out << canonical_dump(j) << "\n";
    return code;
  });
}

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<std::string> files = expand_glob(options.scenarios);
    struct Job {
      std::size_t file;
      int depth;
      int anchors;
    };
    std::vector<Job> jobs;
    for (std::size_t f = 0; f < files.size(); ++f) {
      for (int d : options.depths) {
        for (int a : options.anchors) jobs.push_back({f, d, a});
      }
    }
    std::vector<std::optional<Scenario>> scenarios(files.size());
    std::vector<OracleOutcome> oracles(files.size());
    std::vector<std::once_flag> loaded(files.size());
    std::vector<RunRow> rows(jobs.size());
    std::vector<std::string> failures(jobs.size());
    std::vector<int> codes(jobs.size(), kExitOk);
    std::atomic<std::size_t> next{0};

    auto prepare = [&](std::size_t f) {
      scenarios[f] = load_scenario(files[f]);
      if (!options.oracle) return;
      oracles[f] = scenarios[f]->mode == ScenarioMode::kRobust
                       ? robust_oracle(*scenarios[f], options.oracle_cap)
                       : det_oracle(*scenarios[f], options.oracle_cap);
    };
    auto worker = [&] {
      for (std::size_t j = next++; j < jobs.size(); j = next++) {
        const Job& job = jobs[j];
        try {
          std::call_once(loaded[job.file], prepare, job.file);
          if (!scenarios[job.file]) throw Error(ErrorKind::kInvalidInput, "scenario failed to load");
          const Scenario& s = *scenarios[job.file];
          const std::string id = scenario_id(files[job.file]);
          rows[j] = s.mode == ScenarioMode::kRobust
                        ? run_robust(s, id, job.depth, job.anchors, options.epsilon, options.n0,
                                     options.grid, nullptr)
                        : run_det(s, id, job.depth, job.anchors);
          rows[j].oracle = oracles[job.file];
          if (rows[j].oracle.truncated) codes[j] = kExitOracleTruncated;
        } catch (const Error& e) {
          failures[j] = files[job.file] + ": " + ErrorKindName(e.kind()) + ": " + e.what();
          codes[j] = exit_code_for(e);
        }
      }
    };
    const int workers = std::min<int>(worker_count(options.threads), std::max<int>(1, static_cast<int>(jobs.size())));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::string csv = "scenario,algorithm,depth,anchors,epsilon,n0,k,xi,achieved,oracle,ratio,wall_ms,evals\n";
    struct Group {
      std::size_t runs = 0;
      std::size_t rated = 0;
      double ratio_sum = 0.0;
      double achieved_sum = 0.0;
    };
    std::map<std::tuple<std::string, int, int, std::string, std::string>, Group> groups;
    int code = kExitOk;
    std::size_t written = 0;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (!failures[j].empty()) {
        err << "error: " << failures[j] << "\n";
        code = std::max(code, codes[j]);
        continue;
      }
      code = std::max(code, codes[j]);
      const RunRow& r = rows[j];
      csv += csv_row(r, options.timing);
      ++written;
      auto& g = groups[{r.algorithm, r.depth, r.anchors, r.epsilon ? format_number(*r.epsilon) : "",
                        r.n0 ? std::to_string(*r.n0) : ""}];
      ++g.runs;
      g.achieved_sum += r.achieved;
      if (r.oracle.value && *r.oracle.value > 0.0) {
        ++g.rated;
        g.ratio_sum += r.achieved / *r.oracle.value;
      }
    }
    std::string summary = "algorithm,depth,anchors,epsilon,n0,runs,rated,mean_ratio,mean_achieved\n";
    for (const auto& [key, g] : groups) {
      const auto& [alg, depth, anchors, eps, n0] = key;
      summary += alg + ',' + std::to_string(depth) + ',' + std::to_string(anchors) + ',' + eps + ',' + n0 +
                 ',' + std::to_string(g.runs) + ',' + std::to_string(g.rated) + ',' +
                 (g.rated > 0 ? format_number(g.ratio_sum / static_cast<double>(g.rated)) : std::string()) +
                 ',' + format_number(g.achieved_sum / static_cast<double>(g.runs)) + '\n';
    }
    write_file(options.out_csv, csv);
    std::string summary_path = options.summary_csv;
    if (summary_path.empty()) {
      std::filesystem::path p(options.out_csv);
      summary_path = (p.parent_path() / (p.stem().string() + "_summary.csv")).string();
    }
    write_file(summary_path, summary);
    out << canonical_dump(json{{"command", "bench"},
                               {"scenarios", files.size()},
                               {"rows", written},
                               {"out", options.out_csv},
                               {"summary", summary_path}})
        << "\n";
    return code;
  });
}

}  // namespace flowjam::cli
