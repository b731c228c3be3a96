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


#include "balrep/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <unordered_set>

namespace balrep {
namespace {

void CheckBudget(const char* what, int size, int limit) {
  if (size > limit) {
    std::ostringstream msg;
    msg << what << " oracle accepts at most " << limit << ", got " << size;
    throw BudgetExceededError(msg.str());
  }
}

// Running score of a partial subgraph with a fixed final edge count. Colour
// scores are integer numerators (f times e(G)) held in doubles.
class Scorer {
 public:
  Scorer(const EdgeLabels& labels, std::size_t sub_edges, bool stop_at_zero)
      : labels_(labels),
        colours_(labels.has_colours()),
        k_(labels.k()),
        host_edges_(static_cast<std::int64_t>(labels.size())),
        sub_edges_(static_cast<std::int64_t>(sub_edges)),
        stop_at_zero_(stop_at_zero) {
    if (labels.size() == 0) throw InvalidInstanceError("host has no edges");
    if (colours_) {
      host_counts_.assign(k_, 0);
      for (int c : labels.colours()) ++host_counts_[c - 1];
      counts_.assign(k_, 0);
    } else {
      target_ = labels.Sum();
      const double ratio = static_cast<double>(sub_edges_) / host_edges_;
      for (double& x : target_) x *= ratio;
      sum_.assign(k_, 0.0);
    }
  }

  void Push(std::size_t e, std::vector<int> tuple) {
    if (colours_) {
      ++counts_[labels_.colour(e) - 1];
    } else {
      labels_.AddTo(e, sum_);
    }
    current_.push_back(std::move(tuple));
  }
  void Pop(std::size_t e) {
    if (colours_) {
      --counts_[labels_.colour(e) - 1];
    } else {
      labels_.AddTo(e, sum_, -1.0);
    }
    current_.pop_back();
  }

  // False when the subtree cannot beat the incumbent or was already explored.
  bool Worth(std::uint64_t used) {
    if (done_) return false;
    if (!colours_) return true;
    std::int64_t excess = 0;
    for (int i = 0; i < k_; ++i) {
      excess += std::max<std::int64_t>(0, Numerator(i));
    }
    if (static_cast<double>(excess) >= best_) return false;
    std::string key(reinterpret_cast<const char*>(&used), sizeof(used));
    key.append(reinterpret_cast<const char*>(counts_.data()),
               counts_.size() * sizeof(std::int64_t));
    return seen_.insert(std::move(key)).second;
  }

  void Leaf() {
    ++leaves_;
    double score = 0.0;
    if (colours_) {
      std::int64_t total = 0;
      for (int i = 0; i < k_; ++i) total += std::abs(Numerator(i));
      score = static_cast<double>(total);
    } else {
      for (int i = 0; i < k_; ++i) score += std::abs(sum_[i] - target_[i]);
    }
    if (score < best_) {
      best_ = score;
      argmin_.edges = current_;
      if (stop_at_zero_ && score == 0.0) done_ = true;
    }
  }

  bool found() const { return !argmin_.edges.empty() || best_ == 0.0; }
  bool zero() const { return best_ == 0.0; }
  const Matching& argmin() const { return argmin_; }
  std::uint64_t leaves() const { return leaves_; }

 private:
  std::int64_t Numerator(int i) const {
    return counts_[i] * host_edges_ - sub_edges_ * host_counts_[i];
  }

  const EdgeLabels& labels_;
  bool colours_;
  int k_;
  std::int64_t host_edges_;
  std::int64_t sub_edges_;
  bool stop_at_zero_;
  std::vector<std::int64_t> host_counts_, counts_;
  Label target_, sum_;
  std::vector<std::vector<int>> current_;
  double best_ = std::numeric_limits<double>::infinity();
  Matching argmin_;
  std::uint64_t leaves_ = 0;
  bool done_ = false;
  std::unordered_set<std::string> seen_;
};

void SearchComplete(const CompleteInstance& inst, Scorer& scorer,
                    std::uint64_t used) {
  const int n = inst.n_vertices();
  if (!scorer.Worth(used)) return;
  int u = 0;
  while (u < n && (used >> u & 1)) ++u;
  if (u == n) {
    scorer.Leaf();
    return;
  }
  for (int v = u + 1; v < n; ++v) {
    if (used >> v & 1) continue;
    const std::size_t e = inst.index(u, v);
    scorer.Push(e, {u, v});
    SearchComplete(inst, scorer, used | (1ULL << u) | (1ULL << v));
    scorer.Pop(e);
  }
}

void SearchBipartite(const BipartiteInstance& inst, Scorer& scorer, int l,
                     std::uint64_t used) {
  const int n = inst.n();
  if (!scorer.Worth(used)) return;
  if (l == n) {
    scorer.Leaf();
    return;
  }
  for (int r = 0; r < n; ++r) {
    if (used >> r & 1) continue;
    const std::size_t e = inst.index(l, r);
    scorer.Push(e, {l, r});
    SearchBipartite(inst, scorer, l + 1, used | (1ULL << r));
    scorer.Pop(e);
  }
}

void SearchHypergraph(const HypergraphInstance& inst, Scorer& scorer,
                      std::uint64_t used) {
  const int n = inst.n_vertices();
  const int r = inst.r();
  if (!scorer.Worth(used)) return;
  int u = 0;
  while (u < n && (used >> u & 1)) ++u;
  if (u == n) {
    scorer.Leaf();
    return;
  }
  std::vector<int> tuple{u};
  auto extend = [&](auto&& self, int from) -> void {
    if (static_cast<int>(tuple.size()) == r) {
      std::uint64_t mask = used;
      for (int x : tuple) mask |= 1ULL << x;
      const std::size_t e = HypergraphInstance::Rank(tuple);
      scorer.Push(e, tuple);
      SearchHypergraph(inst, scorer, mask);
      scorer.Pop(e);
      return;
    }
    for (int v = from; v < n; ++v) {
      if (used >> v & 1) continue;
      tuple.push_back(v);
      self(self, v + 1);
      tuple.pop_back();
    }
  };
  extend(extend, u + 1);
}

OracleResult Finish(const Scorer& scorer, double f) {
  OracleResult out;
  out.f = f;
  out.argmin = scorer.argmin();
  out.leaves = scorer.leaves();
  return out;
}

void RequireColours(const EdgeLabels& labels) {
  if (!labels.has_colours()) {
    throw InvalidInstanceError("balanced matchings need a colouring");
  }
}

Scorer RunComplete(const CompleteInstance& inst, bool stop_at_zero) {
  const int n = inst.n_vertices();
  CheckBudget("complete matching", n, OracleBudget::kCompleteVertices);
  if (n < 2 || n % 2 != 0) {
    throw InvalidInstanceError("perfect matchings need an even n >= 2");
  }
  Scorer scorer(inst.labels(), n / 2, stop_at_zero);
  SearchComplete(inst, scorer, 0);
  return scorer;
}

Scorer RunBipartite(const BipartiteInstance& inst, bool stop_at_zero) {
  const int n = inst.n();
  CheckBudget("bipartite matching", n,
              inst.labels().has_colours() ? OracleBudget::kBipartiteColourSide
                                          : OracleBudget::kBipartiteVectorSide);
  if (n < 1) throw InvalidInstanceError("bipartite host needs n >= 1");
  Scorer scorer(inst.labels(), n, stop_at_zero);
  SearchBipartite(inst, scorer, 0, 0);
  return scorer;
}

Scorer RunHypergraph(const HypergraphInstance& inst, bool stop_at_zero) {
  CheckBudget("hypergraph matching", inst.n_vertices(),
              OracleBudget::kHypergraphVertices);
  if (inst.n() < 1) throw InvalidInstanceError("hypergraph host needs n >= 1");
  Scorer scorer(inst.labels(), inst.n(), stop_at_zero);
  SearchHypergraph(inst, scorer, 0);
  return scorer;
}

std::vector<Edge> AsEdges(const Matching& m) {
  std::vector<Edge> out;
  for (const auto& e : m.edges) out.emplace_back(e[0], e[1]);
  return out;
}

}  // namespace

OracleResult MinImbalancePm(const CompleteInstance& instance) {
  const Scorer s = RunComplete(instance, false);
  const std::vector<Edge> edges = AsEdges(s.argmin());
  return Finish(s, Imbalance(instance, edges).total_l1);
}

OracleResult MinImbalancePm(const BipartiteInstance& instance) {
  const Scorer s = RunBipartite(instance, false);
  return Finish(s, Imbalance(instance, s.argmin()).total_l1);
}

OracleResult MinImbalancePm(const HypergraphInstance& instance) {
  const Scorer s = RunHypergraph(instance, false);
  return Finish(s, Imbalance(instance, s.argmin()).total_l1);
}

bool HasBalancedPm(const CompleteInstance& instance) {
  RequireColours(instance.labels());
  return RunComplete(instance, true).zero();
}

bool HasBalancedPm(const BipartiteInstance& instance) {
  RequireColours(instance.labels());
  return RunBipartite(instance, true).zero();
}

bool HasBalancedPm(const HypergraphInstance& instance) {
  RequireColours(instance.labels());
  return RunHypergraph(instance, true).zero();
}

std::vector<Edge> PrueferTree(const std::vector<int>& sequence, int n) {
  if (n < 2 || static_cast<int>(sequence.size()) != n - 2) {
    throw InvalidInstanceError("Pruefer sequence must have length n - 2");
  }
  std::vector<int> degree(n, 1);
  for (int x : sequence) {
    if (x < 0 || x >= n) throw InvalidInstanceError("Pruefer entry out of range");
    ++degree[x];
  }
  std::vector<Edge> edges;
  for (int x : sequence) {
    int leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.emplace_back(leaf, x);
    --degree[leaf];
    --degree[x];
  }
  int a = -1;
  for (int v = 0; v < n; ++v) {
    if (degree[v] == 1) {
      if (a == -1) {
        a = v;
      } else {
        edges.emplace_back(a, v);
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

OracleResult MinImbalanceSpanningTree(const CompleteInstance& instance) {
  const int n = instance.n_vertices();
  CheckBudget("spanning tree", n, OracleBudget::kTreeVertices);
  if (n < 2) throw InvalidInstanceError("spanning trees need n >= 2");
  OracleResult out;
  out.f = std::numeric_limits<double>::infinity();
  std::vector<int> seq(n - 2, 0);
  while (true) {
    const std::vector<Edge> tree = PrueferTree(seq, n);
    const double f = Imbalance(instance, tree).total_l1;
    ++out.leaves;
    if (f < out.f) {
      out.f = f;
      out.argmin.edges.clear();
      for (const Edge& e : tree) out.argmin.edges.push_back({e.u, e.v});
    }
    int i = n - 3;
    while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
  return out;
}

}  // namespace balrep
