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


#include "balrep/spantree.h"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace balrep {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

std::vector<int> CountColours(const std::vector<int>& colour, int k,
                              const std::vector<int>& elements) {
  std::vector<int> count(k + 1, 0);
  for (int e : elements) ++count[colour[e]];
  return count;
}

}  // namespace

bool PartitionMatroid::Independent(const std::vector<int>& elements) const {
  const std::vector<int> count = CountColours(colour, k, elements);
  return std::all_of(count.begin(), count.end(),
                     [&](int c) { return c <= capacity; });
}

int PartitionMatroid::Rank(const std::vector<int>& elements) const {
  const std::vector<int> count = CountColours(colour, k, elements);
  int rank = 0;
  for (int c = 1; c <= k; ++c) rank += std::min(capacity, count[c]);
  return rank;
}

int GraphicRank(int n, const std::vector<Edge>& edges,
                const std::vector<int>& elements) {
  DisjointSets sets(n);
  int rank = 0;
  for (int e : elements) rank += sets.Union(edges[e].u, edges[e].v);
  return rank;
}

IntersectionResult MatroidIntersection(int n, const std::vector<Edge>& edges,
                                       const std::vector<int>& colouring, int k,
                                       int capacity) {
  const int m = static_cast<int>(edges.size());
  if (static_cast<int>(colouring.size()) != m) {
    throw InvalidInstanceError("colouring size differs from the edge count");
  }
  for (int e = 0; e < m; ++e) {
    if (colouring[e] < 1 || colouring[e] > k) {
      throw InvalidInstanceError("colour out of range");
    }
    if (edges[e].u < 0 || edges[e].v >= n || edges[e].u == edges[e].v) {
      throw InvalidInstanceError("edge out of range or a loop");
    }
  }
  std::vector<char> in(m, 0);
  std::vector<int> count(k + 1, 0);
  std::vector<int> current;

  std::vector<int> reached;
  while (true) {
    current.clear();
    for (int e = 0; e < m; ++e) {
      if (in[e]) current.push_back(e);
    }
    DisjointSets full(n);
    for (int e : current) full.Union(edges[e].u, edges[e].v);
    std::vector<char> source(m, 0), sink(m, 0);
    for (int x = 0; x < m; ++x) {
      if (in[x]) continue;
      source[x] = full.Find(edges[x].u) != full.Find(edges[x].v);
      sink[x] = capacity > 0 && count[colouring[x]] < capacity;
    }
    // graphic_out[i]: elements x outside I with I - current[i] + x a forest.
    std::vector<std::vector<int>> graphic_out(current.size());
    for (std::size_t i = 0; i < current.size(); ++i) {
      DisjointSets without(n);
      for (int e : current) {
        if (e != current[i]) without.Union(edges[e].u, edges[e].v);
      }
      for (int x = 0; x < m; ++x) {
        if (!in[x] && without.Find(edges[x].u) != without.Find(edges[x].v)) {
          graphic_out[i].push_back(x);
        }
      }
    }
    std::vector<int> slot(m, -1);
    for (std::size_t i = 0; i < current.size(); ++i) slot[current[i]] = i;

    std::vector<int> parent(m, -2);
    std::vector<int> queue;
    for (int x = 0; x < m; ++x) {
      if (source[x]) {
        parent[x] = -1;
        queue.push_back(x);
      }
    }
    int end = -1;
    for (std::size_t h = 0; h < queue.size() && end == -1; ++h) {
      const int a = queue[h];
      if (!in[a] && sink[a]) {
        end = a;
        break;
      }
      if (in[a]) {
        for (int x : graphic_out[slot[a]]) {
          if (parent[x] != -2) continue;
          parent[x] = a;
          queue.push_back(x);
        }
      } else {
        // a is outside I and its colour is full: swap with a same-coloured y.
        for (int y : current) {
          if (parent[y] != -2 || colouring[y] != colouring[a]) continue;
          parent[y] = a;
          queue.push_back(y);
        }
      }
    }
    if (end == -1) {
      reached.clear();
      for (int e = 0; e < m; ++e) {
        if (parent[e] != -2) reached.push_back(e);
      }
      break;
    }
    for (int a = end; a != -1; a = parent[a]) {
      if (in[a]) {
        in[a] = 0;
        --count[colouring[a]];
      } else {
        in[a] = 1;
        ++count[colouring[a]];
      }
    }
  }

  IntersectionResult out;
  out.common_independent = current;
  std::vector<char> is_reached(m, 0);
  for (int e : reached) is_reached[e] = 1;
  std::vector<int> rest;
  for (int e = 0; e < m; ++e) {
    (is_reached[e] ? rest : out.witness).push_back(e);
  }
  out.graphic_rank_witness = GraphicRank(n, edges, out.witness);
  PartitionMatroid partition{colouring, k, capacity};
  out.partition_rank_rest = partition.Rank(rest);
  if (out.WitnessValue() != static_cast<int>(current.size())) {
    std::ostringstream msg;
    msg << "min-max witness value " << out.WitnessValue()
        << " differs from the common independent set size " << current.size();
    throw InvariantViolationError(msg.str());
  }
  return out;
}

BalancedTreeResult BalancedSpanningTree(const CompleteInstance& instance,
                                        int t) {
  const int k = instance.k();
  const int n = instance.n_vertices();
  if (!instance.labels().has_colours()) {
    throw InvalidInstanceError("balanced trees need a colouring");
  }
  if (k < 1 || t < 1 || n != 2 * k * t + 1) {
    throw InvalidInstanceError("balanced trees need the host K_{2kt+1}");
  }
  std::vector<Edge> edges;
  edges.reserve(instance.edge_count());
  for (std::size_t e = 0; e < instance.edge_count(); ++e) {
    edges.push_back(PairFromIndex(e, n));
  }
  BalancedTreeResult out;
  out.intersection =
      MatroidIntersection(n, edges, instance.labels().colours(), k, 2 * t);
  out.found =
      static_cast<int>(out.intersection.common_independent.size()) == n - 1;
  if (out.found) {
    for (int e : out.intersection.common_independent) {
      out.tree.push_back(edges[e]);
    }
  }
  return out;
}

std::vector<SubsetCondition> ConditionCheck(const CompleteInstance& instance,
                                            int t) {
  const int k = instance.k();
  if (!instance.labels().has_colours()) {
    throw InvalidInstanceError("the subset condition needs a colouring");
  }
  if (k < 1 || k > kMaxConditionColours) {
    std::ostringstream msg;
    msg << "subset condition supports 1.." << kMaxConditionColours
        << " colours, got " << k;
    throw BudgetExceededError(msg.str());
  }
  std::vector<std::int64_t> count(k, 0);
  for (int c : instance.labels().colours()) ++count[c - 1];
  const std::uint32_t subsets = 1u << k;
  std::vector<std::int64_t> within(subsets, 0);
  std::vector<SubsetCondition> out;
  out.reserve(subsets - 1);
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    const int low = std::countr_zero(mask);
    within[mask] = within[mask & (mask - 1)] + count[low];
    SubsetCondition cond;
    cond.mask = mask;
    cond.edges = within[mask];
    cond.threshold =
        static_cast<std::int64_t>(Binomial(2 * std::popcount(mask) * t, 2));
    cond.holds = cond.edges > cond.threshold;
    out.push_back(cond);
  }
  return out;
}

bool ConditionHolds(const std::vector<SubsetCondition>& conditions) {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const SubsetCondition& c) { return c.holds; });
}

CompleteInstance SharpnessInstance(int k, int t, int j) {
  if (k < 2 || t < 1 || j < 1 || j >= k) {
    throw InvalidInstanceError("sharpness instance needs k >= 2, t >= 1, 1 <= j < k");
  }
  const int n = 2 * k * t + 1;
  const int clique = 2 * j * t;
  std::vector<int> colours(Binomial(n, 2));
  int inside = 0, outside = 0;
  for (std::size_t e = 0; e < colours.size(); ++e) {
    const Edge p = PairFromIndex(e, n);
    if (p.v < clique) {
      colours[e] = 1 + inside++ % j;
    } else {
      colours[e] = j + 1 + outside++ % (k - j);
    }
  }
  return CompleteInstance::FromColours(n, std::move(colours), k);
}

}  // namespace balrep
