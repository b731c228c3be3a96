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

#include "balrep/bipartite.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace balrep {
namespace {

constexpr double kAlternationTolerance = 1e-7;

struct Endpoints {
  int a;
  int b;
};

Endpoints EndpointsOf(std::size_t e, int n) {
  return {static_cast<int>(e / n), n + static_cast<int>(e % n)};
}

std::uint64_t PathSeed(std::uint64_t seed, std::size_t index) {
  return seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
}

}  // namespace

Ledger& Ledger::operator+=(const Ledger& other) {
  relax += other.relax;
  necklace += other.necklace;
  deleted += other.deleted;
  partition += other.partition;
  completion += other.completion;
  return *this;
}

PathDecomposition Decompose(const EdgeLabels& normalized,
                            const FractionalMatching& fm) {
  const int n = fm.n;
  PathDecomposition out;
  std::vector<std::vector<std::size_t>> incident(2 * n);
  for (std::size_t e = 0; e < fm.weights.size(); ++e) {
    if (fm.IsFractional(e)) {
      const Endpoints p = EndpointsOf(e, n);
      incident[p.a].push_back(e);
      incident[p.b].push_back(e);
    } else if (fm.weights[e] > 0.5) {
      out.integral_matching.push_back(e);
    }
  }
  std::vector<char> alive(fm.weights.size(), 0);
  for (const auto& list : incident) {
    for (std::size_t e : list) alive[e] = 1;
  }

  auto remove = [&](std::size_t e) {
    alive[e] = 0;
    out.deleted_edges.emplace_back(e, fm.weights[e]);
  };

  // Pruning uses the degrees of the unpruned fractional subgraph.
  for (int v = 0; v < 2 * n; ++v) {
    if (incident[v].size() <= 2) continue;
    bool kept = false;
    for (std::size_t e : incident[v]) {  // Increasing edge index.
      if (!alive[e]) continue;
      if (!kept) {
        kept = true;
        continue;
      }
      remove(e);
      ++out.high_degree_deletions;
    }
  }

  std::vector<std::vector<std::size_t>> live(2 * n);
  for (int v = 0; v < 2 * n; ++v) {
    for (std::size_t e : incident[v]) {
      if (alive[e]) live[v].push_back(e);
    }
  }
  auto other_end = [&](std::size_t e, int v) {
    const Endpoints p = EndpointsOf(e, n);
    return p.a == v ? p.b : p.a;
  };

  std::vector<char> seen(2 * n, 0);
  // Cycles first: components where every vertex has degree 2.
  for (int v = 0; v < 2 * n; ++v) {
    if (seen[v] || live[v].empty()) continue;
    std::vector<int> component{v};
    seen[v] = 1;
    bool cycle = true;
    for (std::size_t head = 0; head < component.size(); ++head) {
      const int x = component[head];
      if (live[x].size() != 2) cycle = false;
      for (std::size_t e : live[x]) {
        const int y = other_end(e, x);
        if (!seen[y]) {
          seen[y] = 1;
          component.push_back(y);
        }
      }
    }
    if (!cycle) continue;
    std::size_t smallest = live[v][0];
    for (int x : component) {
      for (std::size_t e : live[x]) smallest = std::min(smallest, e);
    }
    const Endpoints p = EndpointsOf(smallest, n);
    for (int x : {p.a, p.b}) {
      live[x].erase(std::find(live[x].begin(), live[x].end(), smallest));
    }
    remove(smallest);
    ++out.cycle_deletions;
  }

  std::fill(seen.begin(), seen.end(), 0);
  for (int v = 0; v < 2 * n; ++v) {
    if (seen[v] || live[v].size() != 1) continue;
    PathComponent component;
    component.vertices.push_back(v);
    seen[v] = 1;
    int x = v;
    std::size_t via = live[v][0];
    while (true) {
      const int y = other_end(via, x);
      component.edge_ids.push_back(via);
      component.vertices.push_back(y);
      seen[y] = 1;
      if (live[y].size() == 1) break;
      via = live[y][0] == via ? live[y][1] : live[y][0];
      x = y;
    }
    PathInstance& path = component.path;
    path.alpha = fm.weights[component.edge_ids[0]];
    for (std::size_t j = 0; j < component.edge_ids.size(); ++j) {
      const std::size_t e = component.edge_ids[j];
      const auto h = normalized[e];
      path.labels.emplace_back(h.begin(), h.end());
      const double expected = j % 2 == 0 ? path.alpha : 1.0 - path.alpha;
      if (std::abs(fm.weights[e] - expected) > kAlternationTolerance) {
        std::ostringstream msg;
        msg << "path weights do not alternate at edge " << e << ": "
            << fm.weights[e] << " vs " << expected;
        throw InvariantViolationError(msg.str());
      }
    }
    out.paths.push_back(std::move(component));
  }
  for (int v = 0; v < 2 * n; ++v) {
    if (!live[v].empty() && !seen[v]) {
      throw InvariantViolationError("fractional component left unresolved");
    }
  }
  return out;
}

BipartiteSolution SolveBipartite(const BipartiteInstance& instance,
                                 const BipartiteOptions& options) {
  const int n = instance.n();
  const int k = instance.k();
  if (n < 1) throw InvalidInstanceError("bipartite host needs n >= 1");
  BipartiteSolution sol;
  const NormalizedLabels norm = Normalize(instance.labels());
  sol.fractional = Relax(instance, options.relax);
  sol.decomposition = Decompose(norm.labels, sol.fractional);

  const double inv_scale = 1.0 / norm.scale;
  if (!sol.fractional.exact) {
    sol.ledger.relax = CheckFractionalMatching(instance, sol.fractional)
                           .target_error;
  }
  std::vector<int> right_of(n, -1), left_of(n, -1);
  auto take = [&](std::size_t e) {
    const int l = static_cast<int>(e / n), r = static_cast<int>(e % n);
    if (right_of[l] != -1 || left_of[r] != -1) {
      throw InvariantViolationError("matching pieces overlap");
    }
    right_of[l] = r;
    left_of[r] = l;
  };
  for (std::size_t e : sol.decomposition.integral_matching) take(e);
  for (std::size_t p = 0; p < sol.decomposition.paths.size(); ++p) {
    const PathComponent& component = sol.decomposition.paths[p];
    SplitOptions split_options;
    split_options.seed = PathSeed(options.seed, p);
    const SplitResult split = SplitPath(component.path, k, split_options);
    if (!split.bound_met) {
      std::ostringstream msg;
      msg << "path rounding missed its bound: deviation " << split.deviation;
      throw InvariantViolationError(msg.str());
    }
    sol.path_deviations.push_back(split.deviation);
    sol.ledger.necklace += split.deviation * inv_scale;
    for (int j : split.edges) take(component.edge_ids[j - 1]);
  }
  for (const auto& [e, w] : sol.decomposition.deleted_edges) {
    sol.ledger.deleted += w * L1Norm(norm.labels[e]) * inv_scale;
  }

  std::vector<int> free_left, free_right;
  for (int v = 0; v < n; ++v) {
    if (right_of[v] == -1) free_left.push_back(v);
    if (left_of[v] == -1) free_right.push_back(v);
  }
  if (free_left.size() != free_right.size()) {
    throw InvariantViolationError("unbalanced leftover vertices");
  }
  for (std::size_t i = 0; i < free_left.size(); ++i) {
    const std::size_t e = instance.index(free_left[i], free_right[i]);
    take(e);
    sol.ledger.completion += L1Norm(norm.labels[e]) * inv_scale;
  }
  sol.completion_edges = static_cast<int>(free_left.size());

  for (int l = 0; l < n; ++l) sol.matching.edges.push_back({l, right_of[l]});
  sol.report = Imbalance(instance, sol.matching);
  if (sol.report.total_l1 > sol.ledger.Total() + 1e-6) {
    std::ostringstream msg;
    msg << "imbalance " << sol.report.total_l1 << " exceeds ledger "
        << sol.ledger.Total();
    throw InvariantViolationError(msg.str());
  }
  return sol;
}

}  // namespace balrep
