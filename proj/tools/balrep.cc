// Copyright 2026 The Authors.
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


// Command-line front end: generate instances, solve, verify, run exhaustive
// oracles and sweep benchmarks.
//
// Exit codes: 0 success, 2 usage or parse error, 3 budget or retry limit
// exceeded, 4 invariant violation (including a failed verify), 1 otherwise.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "balrep/bipartite.h"
#include "balrep/core.h"
#include "balrep/embed.h"
#include "balrep/generate.h"
#include "balrep/io.h"
#include "balrep/lowerbounds.h"
#include "balrep/necklace.h"
#include "balrep/oracle.h"
#include "balrep/reduce.h"
#include "balrep/spantree.h"

namespace balrep {
namespace {

constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInvariant = 4;

// Thrown for bad flag combinations; mapped to kExitUsage.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Common {
  std::uint64_t seed = 0;
  std::string output;
};

std::uint64_t EffectiveSeed(std::uint64_t flag) {
  const char* env = std::getenv("BALREP_SEED");
  if (env == nullptr || *env == '\0') return flag;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw UsageError("BALREP_SEED must be an unsigned integer");
  return v;
}

void Emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

void EmitJson(const Json& json, const std::string& path, bool compact = false) {
  Emit(json.dump(compact ? -1 : 2) + "\n", path);
}

std::string Num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

// ---------------------------------------------------------------- generate

struct GenerateConfig {
  std::string family;
  std::string type = "complete";
  std::string labels = "colours";
  int n = 0;
  int k = 0;
  int t = 0;
  int m = 0;
  int r = 3;
  bool near_balanced = false;
};

int CmdGenerate(const GenerateConfig& cfg, const Common& common) {
  const std::uint64_t seed = EffectiveSeed(common.seed);
  std::mt19937_64 rng(seed);
  AnyInstance instance;
  Json meta;
  meta["family"] = cfg.family;
  meta["seed"] = seed;
  if (cfg.family == "kn") {
    instance = GenKn(cfg.k, cfg.t).instance;
    meta["k"] = cfg.k;
    meta["t"] = cfg.t;
  } else if (cfg.family == "knn-sqrt") {
    instance = GenKnnSqrt(cfg.m, cfg.t).instance;
    meta["m"] = cfg.m;
    meta["t"] = cfg.t;
  } else if (cfg.family == "knn-mod") {
    instance = GenKnnModular(cfg.k, cfg.t).instance;
    meta["k"] = cfg.k;
    meta["t"] = cfg.t;
  } else if (cfg.family == "random-balanced") {
    const bool vectors = cfg.labels == "vectors";
    if (!vectors && cfg.labels != "colours") {
      throw UsageError("--labels must be colours or vectors");
    }
    if (cfg.type == "complete") {
      instance = vectors ? CompleteInstance(cfg.n, RandomVectorLabels(
                                                       Binomial(cfg.n, 2), cfg.k, rng))
                         : RandomBalancedComplete(cfg.n, cfg.k, rng,
                                                  cfg.near_balanced);
    } else if (cfg.type == "bipartite") {
      instance = vectors ? BipartiteInstance(
                               cfg.n, RandomVectorLabels(
                                          static_cast<std::size_t>(cfg.n) * cfg.n,
                                          cfg.k, rng))
                         : RandomBalancedBipartite(cfg.n, cfg.k, rng,
                                                   cfg.near_balanced);
    } else if (cfg.type == "hypergraph") {
      instance = vectors ? HypergraphInstance(
                               cfg.r, cfg.n,
                               RandomVectorLabels(Binomial(cfg.r * cfg.n, cfg.r),
                                                  cfg.k, rng))
                         : RandomBalancedHypergraph(cfg.r, cfg.n, cfg.k, rng,
                                                    cfg.near_balanced);
      meta["r"] = cfg.r;
    } else {
      throw UsageError("--type must be complete, bipartite or hypergraph");
    }
    meta["n"] = cfg.n;
    meta["k"] = cfg.k;
    meta["labels"] = cfg.labels;
  } else {
    throw UsageError("unknown family " + cfg.family);
  }
  Json out = InstanceToJson(instance);
  out["meta"] = meta;
  EmitJson(out, common.output, /*compact=*/true);
  return 0;
}

// ------------------------------------------------------------------ solve

struct Calibration {
  double bip = 10.0;
  double comp = 10.0;
  double hyp = 10.0;
  double forest = 10.0;

  void Check() const {
    if (!(bip > 0 && comp > 0 && hyp > 0 && forest > 0)) {
      throw UsageError("calibration constants must be positive");
    }
  }
};

struct SolveConfig {
  std::string instance;
  std::string problem;
  std::string pattern = "path";
  std::string pattern_file;
  std::string mode = "auto";
  int t = 0;
  Calibration calibration;
};

NumericMode ParseMode(const std::string& mode) {
  if (mode == "auto") return NumericMode::kAuto;
  if (mode == "float") return NumericMode::kFloat;
  if (mode == "rational") return NumericMode::kRational;
  throw UsageError("--mode must be auto, float or rational");
}

template <typename T>
const T& Expect(const AnyInstance& instance, const std::string& problem) {
  if (!std::holds_alternative<T>(instance)) {
    throw UsageError("problem " + problem + " does not accept a " +
                     InstanceTypeName(instance) + " instance");
  }
  return std::get<T>(instance);
}

Json BoundJson(double constant, double value, double f) {
  Json out;
  out["constant"] = constant;
  out["value"] = value;
  out["within"] = f <= value + 1e-9;
  return out;
}

PatternGraph BuildPattern(const SolveConfig& cfg, int n, std::mt19937_64& rng) {
  if (!cfg.pattern_file.empty()) return PatternFromJson(ReadJsonFile(cfg.pattern_file));
  if (cfg.pattern == "path") return PatternGraph::Path(n);
  if (cfg.pattern == "cycle") return PatternGraph::Cycle(n);
  if (cfg.pattern == "triangle-factor") {
    if (n % 3 != 0) throw UsageError("triangle factors need 3 | n");
    return PatternGraph::Factor(PatternGraph::Cycle(3), n / 3);
  }
  if (cfg.pattern == "cubic") return RandomCubicPattern(n, rng);
  throw UsageError("--pattern must be path, cycle, triangle-factor or cubic");
}

Json PairsJson(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const Edge& e : edges) out.push_back({e.u, e.v});
  return out;
}

int TreeParameter(const CompleteInstance& inst, int t) {
  if (t > 0) return t;
  const int n = inst.n_vertices(), k = inst.k();
  if ((n - 1) % (2 * k) != 0) {
    throw UsageError("host is not K_{2kt+1}; pass --t");
  }
  return (n - 1) / (2 * k);
}

int CmdSolve(const SolveConfig& cfg, const Common& common) {
  cfg.calibration.Check();
  const std::uint64_t seed = EffectiveSeed(common.seed);
  const AnyInstance instance = InstanceFromJson(ReadJsonFile(cfg.instance));
  BipartiteOptions bip;
  bip.relax.mode = ParseMode(cfg.mode);
  bip.seed = seed;
  const Calibration& c = cfg.calibration;

  Json out;
  out["problem"] = cfg.problem;
  out["seed"] = seed;
  out["type"] = InstanceTypeName(instance);
  if (cfg.problem == "bipartite-matching") {
    const auto& inst = Expect<BipartiteInstance>(instance, cfg.problem);
    const BipartiteSolution sol = SolveBipartite(inst, bip);
    Json m = Json::array();
    for (const auto& e : sol.matching.edges) m.push_back({e[0], inst.n() + e[1]});
    out["matching"] = std::move(m);
    out["imbalance"] = ReportToJson(sol.report);
    out["ledger"] = LedgerToJson(sol.ledger);
    const double k = inst.k();
    out["bound"] = BoundJson(c.bip, c.bip * k * k, sol.report.total_l1);
  } else if (cfg.problem == "complete-matching") {
    const auto& inst = Expect<CompleteInstance>(instance, cfg.problem);
    ReductionOptions opt;
    opt.bipartite = bip;
    opt.seed = seed;
    const CompleteSolution sol = SolveComplete(inst, opt);
    out["matching"] = MatchingToJson(sol.matching);
    out["imbalance"] = ReportToJson(sol.report);
    out["ledger"] = LedgerToJson(sol.ledger);
    out["partition_tries"] = sol.partition.tries;
    const double k = inst.k();
    out["bound"] = BoundJson(c.comp, c.comp * k * k, sol.report.total_l1);
  } else if (cfg.problem == "hypergraph-matching") {
    const auto& inst = Expect<HypergraphInstance>(instance, cfg.problem);
    ReductionOptions opt;
    opt.bipartite = bip;
    opt.seed = seed;
    const HypergraphSolution sol = SolveHypergraph(inst, opt);
    out["matching"] = MatchingToJson(sol.matching);
    out["imbalance"] = ReportToJson(sol.report);
    out["ledger"] = LedgerToJson(sol.ledger);
    out["level_errors"] = sol.level_errors;
    const double k = inst.k();
    out["bound"] =
        BoundJson(c.hyp, c.hyp * inst.r() * k * k, sol.report.total_l1);
  } else if (cfg.problem == "embedding") {
    const auto& inst = Expect<CompleteInstance>(instance, cfg.problem);
    std::mt19937_64 rng(seed);
    const PatternGraph pattern = BuildPattern(cfg, inst.n_vertices(), rng);
    EmbedOptions opt;
    opt.bipartite = bip;
    opt.seed = seed;
    const SpanningEmbedding sol = EmbedSpanning(inst, pattern, opt);
    out["pattern"] = PatternToJson(pattern);
    out["kind"] = PatternKindName(sol.kind);
    Json partition;
    partition["r"] = sol.partition.r;
    partition["c"] = sol.partition.c;
    partition["parts"] = sol.partition.parts;
    out["partition"] = std::move(partition);
    out["map"] = sol.embedding.map;
    out["imbalance"] = ReportToJson(sol.report);
    out["ledger"] = LedgerToJson(sol.ledger);
    out["level_errors"] = sol.level_errors;
    const double k = inst.k();
    const double delta = pattern.max_degree();
    const double f = sol.report.total_l1;
    switch (sol.kind) {
      case PatternKind::kForest:
        out["bound"] = BoundJson(c.forest, c.forest * delta * k * k, f);
        break;
      case PatternKind::kFactor:
        out["bound"] = BoundJson(
            c.comp, c.comp * delta * sol.partition.r * k * k, f);
        break;
      case PatternKind::kBoundedDegree:
        out["bound"] = BoundJson(
            c.comp,
            c.comp * delta * delta * k * k * std::sqrt(std::log(2 * delta)), f);
        break;
    }
  } else if (cfg.problem == "balanced-tree") {
    const auto& inst = Expect<CompleteInstance>(instance, cfg.problem);
    const int t = TreeParameter(inst, cfg.t);
    const BalancedTreeResult res = BalancedSpanningTree(inst, t);
    out["t"] = t;
    out["found"] = res.found;
    const auto conditions = ConditionCheck(inst, t);
    out["condition_holds"] = ConditionHolds(conditions);
    if (res.found) {
      out["tree"] = PairsJson(res.tree);
      out["imbalance"] = ReportToJson(Imbalance(inst, res.tree));
    } else {
      std::vector<Edge> witness;
      for (int e : res.intersection.witness) {
        witness.push_back(PairFromIndex(e, inst.n_vertices()));
      }
      Json cert;
      cert["witness"] = PairsJson(witness);
      cert["graphic_rank"] = res.intersection.graphic_rank_witness;
      cert["partition_rank"] = res.intersection.partition_rank_rest;
      cert["value"] = res.intersection.WitnessValue();
      cert["target"] = inst.n_vertices() - 1;
      out["certificate"] = std::move(cert);
    }
  } else {
    throw UsageError("unknown problem " + cfg.problem);
  }
  EmitJson(out, common.output);
  return 0;
}

// ----------------------------------------------------------------- verify

struct VerifyConfig {
  std::string instance;
  std::string solution;
};

class VerifyFailure : public InvariantViolationError {
 public:
  using InvariantViolationError::InvariantViolationError;
};

void Require(bool ok, const std::string& what) {
  if (!ok) throw VerifyFailure(what);
}

double ReportedF(const Json& sol) {
  Require(sol.contains("imbalance") && sol["imbalance"].contains("total_l1") &&
              sol["imbalance"]["total_l1"].is_number(),
          "solution has no imbalance.total_l1");
  return sol["imbalance"]["total_l1"].get<double>();
}

void CheckF(double recomputed, double reported) {
  Require(std::abs(recomputed - reported) <= 1e-6 * std::max(1.0, recomputed),
          "reported imbalance " + Num(reported) + " differs from recomputed " +
              Num(recomputed));
}

std::vector<Edge> ReadPairs(const Json& json) {
  Require(json.is_array(), "expected an array of pairs");
  std::vector<Edge> out;
  for (const Json& e : json) {
    Require(e.is_array() && e.size() == 2 && e[0].is_number_integer() &&
                e[1].is_number_integer(),
            "malformed pair");
    const int a = e[0].get<int>(), b = e[1].get<int>();
    Require(a != b, "loop edge");
    out.emplace_back(a, b);
  }
  return out;
}

Json VerifySolution(const AnyInstance& instance, const Json& sol) {
  Require(sol.is_object() && sol.contains("problem") && sol["problem"].is_string(),
          "solution has no problem field");
  const std::string problem = sol["problem"].get<std::string>();
  double f = 0.0;
  if (problem == "complete-matching") {
    const auto& inst = Expect<CompleteInstance>(instance, problem);
    const Matching m = MatchingFromJson(sol.at("matching"));
    Require(IsPerfectMatching(m, inst.n_vertices()), "not a perfect matching");
    std::vector<Edge> edges;
    for (const auto& e : m.edges) edges.emplace_back(e[0], e[1]);
    f = Imbalance(inst, edges).total_l1;
    CheckF(f, ReportedF(sol));
  } else if (problem == "bipartite-matching") {
    const auto& inst = Expect<BipartiteInstance>(instance, problem);
    const int n = inst.n();
    Matching m;
    for (const Edge& e : ReadPairs(sol.at("matching"))) {
      Require(e.u >= 0 && e.u < n && e.v >= n && e.v < 2 * n,
              "bipartite edge does not join the two sides");
      m.edges.push_back({e.u, e.v - n});
    }
    Require(IsPerfectBipartiteMatching(m, n), "not a perfect matching");
    f = Imbalance(inst, m).total_l1;
    CheckF(f, ReportedF(sol));
  } else if (problem == "hypergraph-matching") {
    const auto& inst = Expect<HypergraphInstance>(instance, problem);
    const Matching m = MatchingFromJson(sol.at("matching"));
    for (const auto& e : m.edges) {
      Require(static_cast<int>(e.size()) == inst.r(), "hyperedge of the wrong size");
    }
    Require(IsPerfectMatching(m, inst.n_vertices()), "not a perfect matching");
    f = Imbalance(inst, m).total_l1;
    CheckF(f, ReportedF(sol));
  } else if (problem == "embedding") {
    const auto& inst = Expect<CompleteInstance>(instance, problem);
    const PatternGraph pattern = PatternFromJson(sol.at("pattern"));
    Require(pattern.n() == inst.n_vertices(), "pattern does not span the host");
    Require(sol.contains("map") && sol["map"].is_array(), "missing map");
    std::vector<int> map;
    for (const Json& x : sol["map"]) {
      Require(x.is_number_integer(), "map entries must be integers");
      map.push_back(x.get<int>());
    }
    Require(IsValidEmbedding(pattern, map, inst.n_vertices()),
            "map is not an injective embedding");
    std::vector<Edge> image;
    for (const Edge& e : pattern.edges()) image.emplace_back(map[e.u], map[e.v]);
    f = Imbalance(inst, image).total_l1;
    CheckF(f, ReportedF(sol));
  } else if (problem == "balanced-tree") {
    const auto& inst = Expect<CompleteInstance>(instance, problem);
    Require(inst.labels().has_colours(), "balanced trees need a colouring");
    const int n = inst.n_vertices(), k = inst.k();
    Require(sol.contains("t") && sol["t"].is_number_integer(), "missing t");
    const int t = sol["t"].get<int>();
    Require(n == 2 * k * t + 1, "host is not K_{2kt+1}");
    if (sol.value("found", false)) {
      const std::vector<Edge> tree = ReadPairs(sol.at("tree"));
      Require(static_cast<int>(tree.size()) == n - 1, "tree has the wrong size");
      std::vector<int> all(tree.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
      for (const Edge& e : tree) Require(e.v < n, "tree edge out of range");
      Require(GraphicRank(n, tree, all) == n - 1, "tree has a cycle");
      std::vector<int> count(k + 1, 0);
      for (const Edge& e : tree) ++count[inst.labels().colour(inst.index(e.u, e.v))];
      for (int col = 1; col <= k; ++col) {
        Require(count[col] == 2 * t, "tree is not colour-balanced");
      }
      f = Imbalance(inst, tree).total_l1;
      CheckF(f, ReportedF(sol));
    } else {
      const Json& cert = sol.at("certificate");
      const std::vector<Edge> witness = ReadPairs(cert.at("witness"));
      std::set<Edge> in_witness(witness.begin(), witness.end());
      Require(in_witness.size() == witness.size(), "repeated witness edge");
      std::vector<Edge> edges;
      std::vector<int> colours, u_idx, rest_idx;
      for (std::size_t e = 0; e < inst.edge_count(); ++e) {
        const Edge p = PairFromIndex(e, n);
        edges.push_back(p);
        colours.push_back(inst.labels().colour(e));
        (in_witness.count(p) ? u_idx : rest_idx).push_back(static_cast<int>(e));
      }
      Require(u_idx.size() == witness.size(), "witness edge out of range");
      const int r1 = GraphicRank(n, edges, u_idx);
      const int r2 = PartitionMatroid{colours, k, 2 * t}.Rank(rest_idx);
      Require(r1 == cert.at("graphic_rank").get<int>() &&
                  r2 == cert.at("partition_rank").get<int>(),
              "certificate ranks do not match");
      Require(r1 + r2 < n - 1, "certificate does not rule out a balanced tree");
      f = static_cast<double>(r1 + r2);
    }
  } else {
    throw UsageError("unknown problem " + problem);
  }
  Json out;
  out["valid"] = true;
  out["problem"] = problem;
  out["f"] = f;
  return out;
}

int CmdVerify(const VerifyConfig& cfg, const Common& common) {
  const AnyInstance instance = InstanceFromJson(ReadJsonFile(cfg.instance));
  const Json sol = ReadJsonFile(cfg.solution);
  Json out;
  try {
    out = VerifySolution(instance, sol);
  } catch (const InvalidInstanceError& e) {
    throw VerifyFailure(e.what());
  } catch (const Json::exception& e) {
    throw VerifyFailure(e.what());
  }
  EmitJson(out, common.output);
  return 0;
}

// ----------------------------------------------------------------- oracle

struct OracleConfig {
  std::string instance;
  std::string problem;
  bool balanced_only = false;
};

Json OracleJson(const OracleResult& r) {
  Json out;
  out["f"] = r.f;
  out["argmin"] = MatchingToJson(r.argmin);
  out["leaves"] = r.leaves;
  return out;
}

int CmdOracle(const OracleConfig& cfg, const Common& common) {
  const Json json = ReadJsonFile(cfg.instance);
  Json out;
  out["problem"] = cfg.problem;
  if (cfg.problem == "split") {
    int k = 0;
    const PathInstance path = PathFromJson(json, &k);
    const SplitResult r = ExhaustiveSplitOracle(path, k);
    out["deviation"] = r.deviation;
    out["edges"] = r.edges;
    out["cut_points"] = r.split.cut_points;
    out["inside_first"] = r.split.inside_first;
    EmitJson(out, common.output);
    return 0;
  }
  const AnyInstance instance = InstanceFromJson(json);
  if (cfg.problem == "tree") {
    const auto& inst = Expect<CompleteInstance>(instance, "tree");
    out.update(OracleJson(MinImbalanceSpanningTree(inst)));
  } else if (cfg.problem == "pm") {
    std::visit(
        [&](const auto& inst) {
          using T = std::decay_t<decltype(inst)>;
          if constexpr (std::is_same_v<T, MultipartiteInstance>) {
            throw UsageError("no matching oracle for multipartite hosts");
          } else if (cfg.balanced_only) {
            out["has_balanced"] = HasBalancedPm(inst);
          } else {
            const OracleResult r = MinImbalancePm(inst);
            out.update(OracleJson(r));
            if (inst.labels().has_colours()) out["has_balanced"] = r.f == 0.0;
          }
        },
        instance);
  } else {
    throw UsageError("--problem must be pm, tree or split");
  }
  EmitJson(out, common.output);
  return 0;
}

// ------------------------------------------------------------------ bench

struct BenchConfig {
  std::string problem = "bipartite";
  std::vector<int> n;
  std::vector<int> k;
  int seeds = 10;
  int r = 3;
  bool zero_runtime = false;
  std::string mode = "auto";
};

struct BenchRow {
  int n;
  int k;
  double t;
  std::uint64_t seed;
  double f;
  double runtime_ms;
  Ledger ledger;
};

BenchRow RunBenchCell(const BenchConfig& cfg, int n, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BipartiteOptions bip;
  bip.relax.mode = ParseMode(cfg.mode);
  bip.seed = seed;
  ReductionOptions red;
  red.bipartite = bip;
  red.seed = seed;
  BenchRow row{n, k, 0.0, seed, 0.0, 0.0, {}};
  const auto start = std::chrono::steady_clock::now();
  if (cfg.problem == "bipartite") {
    const BipartiteInstance inst = RandomBalancedBipartite(n, k, rng, true);
    const BipartiteSolution sol = SolveBipartite(inst, bip);
    row.t = static_cast<double>(n) / k;
    row.f = sol.report.total_l1;
    row.ledger = sol.ledger;
  } else if (cfg.problem == "complete") {
    const CompleteInstance inst = RandomBalancedComplete(n, k, rng, true);
    const CompleteSolution sol = SolveComplete(inst, red);
    row.t = static_cast<double>(n) / (2 * k);
    row.f = sol.report.total_l1;
    row.ledger = sol.ledger;
  } else if (cfg.problem == "hypergraph") {
    const HypergraphInstance inst =
        RandomBalancedHypergraph(cfg.r, n, k, rng, true);
    const HypergraphSolution sol = SolveHypergraph(inst, red);
    row.t = static_cast<double>(n) / k;
    row.f = sol.report.total_l1;
    row.ledger = sol.ledger;
  } else if (cfg.problem == "path-embedding") {
    const CompleteInstance inst = RandomBalancedComplete(n, k, rng, true);
    EmbedOptions opt;
    opt.bipartite = bip;
    opt.seed = seed;
    const SpanningEmbedding sol = EmbedSpanning(inst, PatternGraph::Path(n), opt);
    row.t = static_cast<double>(n - 1) / k;
    row.f = sol.report.total_l1;
    row.ledger = sol.ledger;
  } else {
    throw UsageError(
        "--problem must be bipartite, complete, hypergraph or path-embedding");
  }
  const auto stop = std::chrono::steady_clock::now();
  row.runtime_ms = cfg.zero_runtime
                       ? 0.0
                       : std::chrono::duration<double, std::milli>(stop - start)
                             .count();
  return row;
}

// Least-squares slope of f against n.
double Slope(const std::vector<BenchRow>& rows) {
  double sn = 0, sf = 0, snn = 0, snf = 0;
  for (const BenchRow& r : rows) {
    sn += r.n;
    sf += r.f;
    snn += static_cast<double>(r.n) * r.n;
    snf += r.n * r.f;
  }
  const double count = rows.size();
  const double denom = count * snn - sn * sn;
  return denom == 0.0 ? 0.0 : (count * snf - sn * sf) / denom;
}

int CmdBench(const BenchConfig& cfg, const Common& common) {
  const std::uint64_t base = EffectiveSeed(common.seed);
  if (cfg.n.empty() || cfg.k.empty() || cfg.seeds < 1) {
    throw UsageError("bench needs --n, --k and --seeds >= 1");
  }
  std::ostringstream csv;
  csv << "problem,n,k,t,seed,f,runtime_ms,ledger_relax,ledger_necklace,"
         "ledger_partition,ledger_completion\n";
  std::map<int, std::vector<BenchRow>> by_k;
  for (int k : cfg.k) {
    for (int n : cfg.n) {
      for (int s = 0; s < cfg.seeds; ++s) {
        const BenchRow row = RunBenchCell(cfg, n, k, base + s);
        by_k[k].push_back(row);
        csv << cfg.problem << ',' << row.n << ',' << row.k << ',' << Num(row.t)
            << ',' << row.seed << ',' << Num(row.f) << ','
            << Num(row.runtime_ms) << ',' << Num(row.ledger.relax) << ','
            << Num(row.ledger.necklace + row.ledger.deleted) << ','
            << Num(row.ledger.partition) << ',' << Num(row.ledger.completion)
            << '\n';
      }
    }
  }
  for (const auto& [k, rows] : by_k) {
    double max_f = 0.0;
    for (const BenchRow& r : rows) max_f = std::max(max_f, r.f);
    csv << "summary_max_f,," << k << ",,," << Num(max_f) << ",,,,,\n";
    csv << "summary_slope,," << k << ",,," << Num(Slope(rows)) << ",,,,,\n";
  }
  Emit(csv.str(), common.output);
  return 0;
}

std::vector<int> ParseList(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad integer list: " + text);
    }
  }
  return out;
}

int Run(int argc, char** argv) {
  CLI::App app{"Near-representative matchings, embeddings and spanning trees"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "RNG seed (BALREP_SEED overrides)");
    sub->add_option("-o,--output", common.output, "Output path (default stdout)");
  };

  GenerateConfig gen;
  CLI::App* g = app.add_subcommand("generate", "Write an instance as JSON");
  g->add_option("--family", gen.family, "kn, knn-sqrt, knn-mod or random-balanced")
      ->required();
  g->add_option("--type", gen.type, "complete, bipartite or hypergraph");
  g->add_option("--labels", gen.labels, "colours or vectors");
  g->add_option("--n", gen.n, "Vertices (complete), side size or part size");
  g->add_option("--k", gen.k, "Colours / label dimension");
  g->add_option("--t", gen.t, "Construction parameter t");
  g->add_option("--m", gen.m, "knn-sqrt parameter m");
  g->add_option("--r", gen.r, "Hypergraph uniformity");
  g->add_flag("--near-balanced", gen.near_balanced,
              "Allow class sizes differing by one");
  add_common(g);

  SolveConfig solve;
  CLI::App* s = app.add_subcommand("solve", "Run a solver on an instance");
  s->add_option("--instance", solve.instance)->required();
  s->add_option("--problem", solve.problem,
                "complete-matching, bipartite-matching, hypergraph-matching, "
                "embedding or balanced-tree")
      ->required();
  s->add_option("--pattern", solve.pattern, "path, cycle, triangle-factor or cubic");
  s->add_option("--pattern-file", solve.pattern_file, "Pattern JSON {n, edges}");
  s->add_option("--mode", solve.mode, "auto, float or rational");
  s->add_option("--t", solve.t, "Balanced tree parameter (default (n-1)/2k)");
  s->add_option("--c-bip", solve.calibration.bip);
  s->add_option("--c-comp", solve.calibration.comp);
  s->add_option("--c-hyp", solve.calibration.hyp);
  s->add_option("--c-for", solve.calibration.forest);
  add_common(s);

  VerifyConfig verify;
  CLI::App* v = app.add_subcommand("verify", "Recheck a solution from scratch");
  v->add_option("--instance", verify.instance)->required();
  v->add_option("--solution", verify.solution)->required();
  add_common(v);

  OracleConfig oracle;
  CLI::App* o = app.add_subcommand("oracle", "Exhaustive minimum on a small instance");
  o->add_option("--instance", oracle.instance)->required();
  o->add_option("--problem", oracle.problem, "pm, tree or split")->required();
  o->add_flag("--balanced-only", oracle.balanced_only,
              "Only decide whether a balanced matching exists");
  add_common(o);

  BenchConfig bench;
  std::string n_list, k_list;
  CLI::App* b = app.add_subcommand("bench", "Sweep random instances to CSV");
  b->add_option("--problem", bench.problem,
                "bipartite, complete, hypergraph or path-embedding");
  b->add_option("--n", n_list, "Comma-separated sizes")->required();
  b->add_option("--k", k_list, "Comma-separated colour counts")->required();
  b->add_option("--seeds", bench.seeds, "Seeds per cell");
  b->add_option("--r", bench.r, "Hypergraph uniformity");
  b->add_option("--mode", bench.mode, "auto, float or rational");
  b->add_flag("--zero-runtime", bench.zero_runtime,
              "Write 0 for runtime_ms (byte-identical output)");
  add_common(b);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*g) return CmdGenerate(gen, common);
    if (*s) return CmdSolve(solve, common);
    if (*v) return CmdVerify(verify, common);
    if (*o) return CmdOracle(oracle, common);
    bench.n = ParseList(n_list);
    bench.k = ParseList(k_list);
    return CmdBench(bench, common);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidInstanceError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const VerifyFailure& e) {
    std::cerr << "verify failed: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const BudgetExceededError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const RetryExhaustedError& e) {
    std::cerr << "retries exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InvariantViolationError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace
}  // namespace balrep

int main(int argc, char** argv) { return balrep::Run(argc, argv); }
