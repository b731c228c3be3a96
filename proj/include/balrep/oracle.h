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


// Exhaustive minimizers used as ground truth on small instances.
//
// Perfect matchings are enumerated by matching the smallest free vertex
// first, partners in increasing order, so the reported argmin is the first
// optimal matching in that order. Colour-backed labels are scored with exact
// integer counts and pruned by the excess of the partial counts over their
// targets; partial states already explored are skipped.

#ifndef BALREP_ORACLE_H_
#define BALREP_ORACLE_H_

#include <cstdint>
#include <vector>

#include "balrep/core.h"

namespace balrep {

// Largest instances each exhaustive routine accepts. Bigger requests throw
// BudgetExceededError.
struct OracleBudget {
  static constexpr int kCompleteVertices = 14;
  static constexpr int kBipartiteColourSide = 20;
  static constexpr int kBipartiteVectorSide = 10;
  static constexpr int kTreeVertices = 8;
  static constexpr int kHypergraphVertices = 9;
};

struct OracleResult {
  double f = 0.0;
  // Pairs (complete, tree), (left, right) pairs, or sorted r-tuples.
  Matching argmin;
  std::uint64_t leaves = 0;  // Complete subgraphs scored.
};

OracleResult MinImbalancePm(const CompleteInstance& instance);
OracleResult MinImbalancePm(const BipartiteInstance& instance);
OracleResult MinImbalancePm(const HypergraphInstance& instance);

// True iff the minimum is exactly zero; stops at the first zero. Requires a
// colouring.
bool HasBalancedPm(const CompleteInstance& instance);
bool HasBalancedPm(const BipartiteInstance& instance);
bool HasBalancedPm(const HypergraphInstance& instance);

// Minimum over all n^(n-2) labelled spanning trees, in lexicographic Pruefer
// order.
OracleResult MinImbalanceSpanningTree(const CompleteInstance& instance);

// Decodes a Pruefer sequence over [n] (length n - 2) into tree edges.
std::vector<Edge> PrueferTree(const std::vector<int>& sequence, int n);

}  // namespace balrep

#endif  // BALREP_ORACLE_H_
