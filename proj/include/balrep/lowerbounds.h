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


// Colour-balanced colourings with no colour-balanced perfect matching.
//
// The modular families colour the edges between vertex blocks i and j by
// i + j (mod k), with colours written 1..k (residue 0 is colour k). Summing
// colours over a perfect matching then gives sum_i i * |block i| (mod k)
// whatever the matching, and block sizes are chosen so that this residue
// cannot equal the residue t * (1 + ... + k) of a balanced matching. A few
// recoloured edges restore exact colour balance.

#ifndef BALREP_LOWERBOUNDS_H_
#define BALREP_LOWERBOUNDS_H_

#include <vector>

#include "balrep/core.h"

namespace balrep {

enum class ConstructionFamily { kKnnSqrt, kKnnModular, kKnModular };

const char* ConstructionFamilyName(ConstructionFamily family);

// An edge whose colour differs from the block rule. For bipartite hosts u is
// the left vertex and v the right vertex.
struct Recolouring {
  int u = 0;
  int v = 0;
  int from = 0;
  int to = 0;
};

struct ConstructionSpec {
  ConstructionFamily family = ConstructionFamily::kKnModular;
  int m = 0;  // kKnnSqrt only.
  int k = 0;
  int t = 0;
  // Block size offsets from 2t (complete) or from t (bipartite, left blocks
  // then right blocks). Sum to zero.
  std::vector<int> deltas;
  // 1-based block of every vertex; bipartite hosts list the left side first.
  std::vector<int> block_of;
  std::vector<Recolouring> recoloured;

  int BlockSize(int block) const;  // Counts over all vertices.
};

struct GeneratedComplete {
  CompleteInstance instance;
  ConstructionSpec spec;
};

struct GeneratedBipartite {
  BipartiteInstance instance;
  ConstructionSpec spec;
};

// K_{kt,kt} with k = 2m^2 in which every perfect matching has f_c >= m.
// Throws InvalidInstanceError unless t is odd and m >= 1.
GeneratedBipartite GenKnnSqrt(int m, int t);

// K_{kt,kt} with no colour-balanced perfect matching, for k >= 2, t >= 1.
GeneratedBipartite GenKnnModular(int k, int t);

// K_{2kt} with no colour-balanced perfect matching, for k >= 3, t >= 1.
// Odd k, even k with odd t, and even k with even t use different recipes.
GeneratedComplete GenKn(int k, int t);

// Colour counts per class, index c-1 for colour c.
std::vector<std::int64_t> ColourCounts(const EdgeLabels& labels);
bool IsColourBalanced(const EdgeLabels& labels);

// Colour of pair (u, v) under the block rule and the recolourings
// (bipartite: u left, v right).
int SpecColour(const ConstructionSpec& spec, int u, int v);

struct ResidueReport {
  int direct = 0;   // sum of colours over M, mod k, in [0, k)
  int formula = 0;  // sum_i i |block i| + recolouring correction, mod k
  bool agree = false;
  int balanced_residue = 0;  // t (1 + ... + k) mod k
  // Residues the invariant allows: the block residue plus the correction of
  // any set of pairwise disjoint recoloured edges.
  std::vector<int> attainable;
  bool balanced_attainable = false;
};

// Pairs (u, v) of a perfect matching of the generated host (bipartite: left,
// right). Throws InvalidInstanceError for kKnnSqrt specs or non-perfect
// matchings.
ResidueReport VerifyModInvariant(const ConstructionSpec& spec,
                                 const Matching& matching);

}  // namespace balrep

#endif  // BALREP_LOWERBOUNDS_H_
