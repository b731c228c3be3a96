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

// Rounding an alternating-weight path to a matching.
//
// The path has vertices 0..n-1 and edges e_1..e_{n-1}, e_j = {j-1, j}. Odd
// edges carry weight alpha, even edges 1 - alpha. An interval split cuts the
// path at interior vertices into segments that alternate between "inside" and
// "outside"; the matching takes the odd edges of inside segments and the even
// edges of outside segments. Where a cut would make two consecutive edges
// both selected, the edge after the cut is dropped.
//
// The goal is a matching M whose label sum is close to the fractional sum
//   sum_j w(e_j) h(e_j)
// in l1-norm, using at most 4k interior cuts (4k + 2 endpoints counting the
// two ends of the path).

#ifndef BALREP_NECKLACE_H_
#define BALREP_NECKLACE_H_

#include <cstdint>
#include <vector>

#include "balrep/core.h"

namespace balrep {

struct PathInstance {
  std::vector<Label> labels;  // h(e_1), ..., h(e_{n-1}).
  double alpha = 0.0;

  int n() const { return static_cast<int>(labels.size()) + 1; }
  // Throws InvalidInstanceError on n < 2, ragged labels, alpha outside [0, 1]
  // or a label of l1-norm above 1.
  void Validate(int k) const;
};

struct IntervalSplit {
  // Interior cut vertices, strictly increasing, each in [1, n-2], consecutive
  // cuts at least 2 apart. Cut p separates edges e_p and e_{p+1}.
  std::vector<int> cut_points;
  bool inside_first = true;
};

struct SplitResult {
  Matching matching;        // Vertex pairs {j-1, j}.
  std::vector<int> edges;   // Selected edge indices j, increasing.
  IntervalSplit split;
  double deviation = 0.0;
  bool bound_met = true;    // deviation <= 4k + 2.
  int restarts = 0;
};

// Maximum number of interior cuts for dimension k.
int CutBudget(int k);

// Edges selected by `split` on a path with n vertices. Throws
// InvalidInstanceError when the split violates the IntervalSplit invariants.
std::vector<int> SelectedEdges(const IntervalSplit& split, int n);

// || h(M) - sum_j w(e_j) h(e_j) ||_1 for the edge set `edges`.
double SplitDeviation(const PathInstance& path, const std::vector<int>& edges);

struct SplitOptions {
  std::uint64_t seed = 0;
  int restarts_per_dimension = 200;
  int steps_per_vertex = 50;
  // Stop after this many consecutive restarts without improvement; 0 runs
  // every restart.
  int patience = 0;
};

SplitResult SplitPath(const PathInstance& path, int k,
                      const SplitOptions& options = {});

inline constexpr int kMaxOraclePathVertices = 24;

// Minimum-deviation split over every IntervalSplit with at most `max_cuts`
// interior cuts (CutBudget(k) when negative). Ties are broken as in
// SplitPath: larger matching, then lexicographically smaller cut vector, then
// inside_first = true.
SplitResult ExhaustiveSplitOracle(const PathInstance& path, int k,
                                  int max_cuts = -1);

}  // namespace balrep

#endif  // BALREP_NECKLACE_H_
