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


// Colour-balanced spanning trees of K_{2kt+1}.
//
// A balanced tree is a common independent set of size 2kt in the cycle matroid
// of the host and the partition matroid that allows 2t edges of each colour.
// Maximum common independent sets come from exchange-graph augmentation; when
// the maximum falls short, the final exchange graph yields a set U with
// r1(U) + r2(E \ U) equal to the maximum, certifying that no tree exists.

#ifndef BALREP_SPANTREE_H_
#define BALREP_SPANTREE_H_

#include <cstdint>
#include <vector>

#include "balrep/core.h"

namespace balrep {

// Ground-set elements are coloured 1..k; at most `capacity` per colour.
struct PartitionMatroid {
  std::vector<int> colour;
  int k = 0;
  int capacity = 0;

  bool Independent(const std::vector<int>& elements) const;
  // r(S) = sum over colours of min(capacity, |S of that colour|).
  int Rank(const std::vector<int>& elements) const;
};

// Rank of an edge set in the cycle matroid of a graph on n vertices.
int GraphicRank(int n, const std::vector<Edge>& edges,
                const std::vector<int>& elements);

struct IntersectionResult {
  std::vector<int> common_independent;  // Element indices, sorted.
  std::vector<int> witness;             // U, sorted.
  int graphic_rank_witness = 0;         // r1(U)
  int partition_rank_rest = 0;          // r2(E \ U)

  int WitnessValue() const {
    return graphic_rank_witness + partition_rank_rest;
  }
};

// Maximum common independent set of the cycle matroid of (n, edges) and the
// partition matroid with colours `colouring` (1..k) and the given capacity.
// Augments along shortest exchange-graph paths; BFS visits elements in index
// order.
IntersectionResult MatroidIntersection(int n, const std::vector<Edge>& edges,
                                       const std::vector<int>& colouring, int k,
                                       int capacity);

struct BalancedTreeResult {
  bool found = false;
  std::vector<Edge> tree;  // 2t edges of every colour when found.
  IntersectionResult intersection;
};

// `instance` must be colour-backed on K_{2kt+1}; throws InvalidInstanceError
// otherwise.
BalancedTreeResult BalancedSpanningTree(const CompleteInstance& instance,
                                        int t);

struct SubsetCondition {
  std::uint32_t mask = 0;  // Bit c-1 set for colour c.
  std::int64_t edges = 0;  // Edges whose colour lies in the subset.
  std::int64_t threshold = 0;  // C(2 |S| t, 2)
  bool holds = false;          // edges > threshold
};

inline constexpr int kMaxConditionColours = 20;

// One entry per nonempty colour subset, in increasing mask order. When every
// entry holds, a balanced spanning tree exists.
std::vector<SubsetCondition> ConditionCheck(const CompleteInstance& instance,
                                            int t);
bool ConditionHolds(const std::vector<SubsetCondition>& conditions);

// K_{2kt+1} whose edges of colours 1..j are exactly the C(2jt, 2) edges of
// the clique on vertices 0..2jt-1 (colours 1..j assigned round robin). The
// other edges get colours j+1..k round robin. No balanced tree exists.
CompleteInstance SharpnessInstance(int k, int t, int j = 1);

}  // namespace balrep

#endif  // BALREP_SPANTREE_H_
